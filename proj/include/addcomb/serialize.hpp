#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "addcomb/constructions.hpp"
#include "addcomb/quantities.hpp"
#include "addcomb/report.hpp"
#include "addcomb/verifier.hpp"

namespace addcomb {

using Json = nlohmann::ordered_json;

// Integers serialize as JSON numbers while they are JS-safe (< 2^53),
// as decimal strings beyond.
inline Json json_int(const BigInt& v) {
    static const BigInt kSafe = BigInt(1) << 53;
    if (v < kSafe && v > -kSafe) return Json(static_cast<std::int64_t>(v));
    return Json(v.str());
}

inline Json to_json(const Rational& r) {
    return Json{{"num", json_int(boost::multiprecision::numerator(r))},
                {"den", json_int(boost::multiprecision::denominator(r))}};
}

inline Json to_json(const ExtRational& t) {
    if (t.infinite) return Json("inf");
    return to_json(t.value);
}

inline Json sets_json(const std::vector<NamedSet>& sets) {
    Json out = Json::object();
    for (const auto& s : sets) out[s.name] = s.elements;
    return out;
}

inline Json to_json(const CheckReport& r) {
    Json out;
    out["check_id"] = r.check_id;
    out["group"] = r.group;
    out["sets"] = sets_json(r.sets);
    out["lhs"] = to_json(r.lhs);
    out["rhs"] = to_json(r.rhs);
    out["pass"] = to_string(r.outcome);
    out["ratio"] = r.ratio ? to_json(*r.ratio) : Json(nullptr);
    out["notes"] = r.notes;
    out["seed"] = r.seed ? Json(*r.seed) : Json(nullptr);
    return out;
}

inline Json to_json(const GroupSet& s) { return Json(s.elements()); }

inline Json to_json(const QuantityResult& q) {
    Json out;
    out["kind"] = to_string(q.kind);
    out["value"] = q.infinite ? Json("inf") : to_json(q.value);
    out["T"] = q.T ? to_json(*q.T) : Json(nullptr);
    Json w = Json::object();
    if (q.witness_x) w["X"] = to_json(*q.witness_x);
    if (q.witness_y) w["Y"] = to_json(*q.witness_y);
    out["witness"] = w;
    out["exactness"] = to_string(q.exactness);
    out["notes"] = q.notes;
    return out;
}

inline Json to_json(const FamilyRunSummary& s) {
    Json out;
    out["family"] = s.family;
    out["checks"] = s.checks;
    out["T"] = s.t_values;
    out["seed"] = s.seed;
    out["instances"] = s.instances;
    out["counts"] = Json{{"checked", s.checked},
                         {"passed", s.passed},
                         {"failed", s.failed},
                         {"na", s.na}};
    Json measured = Json::object();
    for (const auto& [id, v] : s.measured_max) {
        measured[id] = Json{{"max", to_json(v)}, {"min", to_json(s.measured_min.at(id))}};
    }
    out["measured_constants"] = measured;
    Json extremal = Json::object();
    for (const auto& [id, rep] : s.argmax_ratio) {
        Json e;
        e["argmax_ratio"] = to_json(rep);
        const auto mn = s.argmin_ratio.find(id);
        if (mn != s.argmin_ratio.end()) e["argmin_ratio"] = to_json(mn->second);
        extremal[id] = e;
    }
    out["extremal"] = extremal;
    Json fails = Json::array();
    for (const auto& f : s.failures) fails.push_back(to_json(f));
    out["failures"] = fails;
    return out;
}

inline Json to_json(const RandomDirectPairTrace& t) {
    Json out;
    out["K"] = to_json(t.K);
    out["M"] = to_json(t.M);
    out["delta"] = to_json(t.delta);
    out["omega_size"] = t.omega_size;
    out["attempts"] = t.attempts;
    out["success"] = t.success;
    out["A_star"] = to_json(t.a_star);
    out["B_star"] = to_json(t.b_star);
    out["measured_c0"] = t.measured_c0;
    out["notes"] = t.notes;
    return out;
}

inline Json to_json(const CoverWitness& w) {
    Json out;
    out["core"] = to_json(w.core);
    out["translates"] = w.translates;
    out["complement_cover"] = to_json(w.complement_cover);
    out["steps"] = w.steps;
    out["verified"] = w.verified;
    out["notes"] = w.notes;
    return out;
}

inline Json to_json(const RandomSExperiment& e) {
    Json out;
    out["group"] = e.group;
    out["seed"] = e.seed;
    Json rows = Json::array();
    for (const auto& r : e.rows) {
        rows.push_back(Json{{"delta", to_json(r.delta)},
                            {"trials", r.trials},
                            {"median_size", r.median_size},
                            {"median_S_lower_bound", to_json(r.median_s)},
                            {"S_times_sqrt_delta", r.s_scaled},
                            {"median_ap", r.median_ap},
                            {"rs2_bound", r.rs2_bound}});
    }
    out["rows"] = rows;
    Json trend = Json::array();
    for (const auto& t : e.trend) trend.push_back(to_json(t));
    out["trend"] = trend;
    return out;
}

// --- CSV projections ---------------------------------------------------

inline std::string csv_escape(const std::string& s) {
    bool needs = s.find_first_of(",\"\n") != std::string::npos;
    if (!needs) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    return out + "\"";
}

inline std::string csv_of_reports(const std::vector<CheckReport>& reports) {
    std::string out = "check_id,group,sets,lhs,rhs,pass,ratio,notes,seed\n";
    for (const auto& r : reports) {
        std::string sets;
        for (const auto& s : r.sets) {
            if (!sets.empty()) sets += "|";
            sets += s.name + "={";
            for (std::size_t i = 0; i < s.elements.size(); ++i)
                sets += (i ? "," : "") + std::to_string(s.elements[i]);
            sets += "}";
        }
        std::string notes;
        for (const auto& n : r.notes) {
            if (!notes.empty()) notes += "|";
            notes += n;
        }
        out += r.check_id + "," + r.group + "," + csv_escape(sets) + "," +
               csv_escape(to_string(r.lhs)) + "," + csv_escape(to_string(r.rhs)) + "," +
               to_string(r.outcome) + "," +
               csv_escape(r.ratio ? to_string(*r.ratio) : "") + "," + csv_escape(notes) +
               "," + (r.seed ? std::to_string(*r.seed) : "") + "\n";
    }
    return out;
}

inline std::vector<CheckReport> collect_reports(const FamilyRunSummary& s) {
    std::vector<CheckReport> out;
    for (const auto& [id, r] : s.argmax_ratio) out.push_back(r);
    for (const auto& [id, r] : s.argmin_ratio) out.push_back(r);
    for (const auto& f : s.failures) out.push_back(f);
    return out;
}

inline std::string csv_of_experiment(const RandomSExperiment& e) {
    std::string out =
        "delta,trials,median_size,median_S_num,median_S_den,S_times_sqrt_delta,"
        "median_ap,rs2_bound\n";
    for (const auto& r : e.rows) {
        out += to_string(r.delta) + "," + std::to_string(r.trials) + "," +
               std::to_string(r.median_size) + "," +
               boost::multiprecision::numerator(r.median_s).str() + "," +
               boost::multiprecision::denominator(r.median_s).str() + "," +
               std::to_string(r.s_scaled) + "," + std::to_string(r.median_ap) + "," +
               std::to_string(r.rs2_bound) + "\n";
    }
    return out;
}

}  // namespace addcomb
