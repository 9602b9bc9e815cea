#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "addcomb/group.hpp"
#include "addcomb/rational.hpp"

namespace addcomb {

enum class Outcome { pass, fail, na };

struct NamedSet {
    std::string name;
    std::vector<Element> elements;  // sorted canonical indices
};

// One verified inequality instance, normalized to the orientation
// lhs <= rhs. Measured-constant reports (statements that only hold up
// to an absolute constant) use outcome na plus a "measured" note; the
// constant rides in ratio.
struct CheckReport {
    std::string check_id;
    std::string group;
    std::vector<NamedSet> sets;
    Rational lhs{0};
    Rational rhs{0};
    Outcome outcome = Outcome::na;
    std::optional<Rational> ratio;  // rhs/lhs when lhs > 0; the constant for measured
    std::vector<std::string> notes;
    std::optional<std::uint64_t> seed;

    static CheckReport inequality(std::string id, std::string group_v,
                                  std::vector<NamedSet> sets_v, Rational lhs_v, Rational rhs_v,
                                  std::vector<std::string> notes_v = {}) {
        CheckReport r;
        r.check_id = std::move(id);
        r.group = std::move(group_v);
        r.sets = std::move(sets_v);
        r.lhs = std::move(lhs_v);
        r.rhs = std::move(rhs_v);
        r.outcome = r.lhs <= r.rhs ? Outcome::pass : Outcome::fail;
        if (r.lhs > 0) r.ratio = r.rhs / r.lhs;
        r.notes = std::move(notes_v);
        return r;
    }

    static CheckReport measured(std::string id, std::string group_v,
                                std::vector<NamedSet> sets_v, Rational constant,
                                std::vector<std::string> notes_v = {}) {
        CheckReport r;
        r.check_id = std::move(id);
        r.group = std::move(group_v);
        r.sets = std::move(sets_v);
        r.outcome = Outcome::na;
        r.ratio = std::move(constant);
        r.notes = std::move(notes_v);
        r.notes.push_back("measured");
        return r;
    }

    static CheckReport skipped(std::string id, std::string group_v,
                               std::vector<NamedSet> sets_v, std::string why) {
        CheckReport r;
        r.check_id = std::move(id);
        r.group = std::move(group_v);
        r.sets = std::move(sets_v);
        r.outcome = Outcome::na;
        r.notes.push_back(std::move(why));
        return r;
    }

    bool is_measured() const {
        for (const auto& n : notes)
            if (n == "measured") return true;
        return false;
    }

    std::string instance() const {
        std::string out = group;
        for (const auto& s : sets) {
            out += ";" + s.name + "={";
            for (std::size_t i = 0; i < s.elements.size(); ++i) {
                if (i) out += ",";
                out += std::to_string(s.elements[i]);
            }
            out += "}";
        }
        return out;
    }
};

inline std::string to_string(Outcome o) {
    switch (o) {
        case Outcome::pass: return "pass";
        case Outcome::fail: return "fail";
        default: return "n/a";
    }
}

}  // namespace addcomb
