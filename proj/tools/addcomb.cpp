// Command-line front door: parse groups/sets, compute quantities, run
// constructions, execute verification families and experiments, emit
// JSON/CSV. Exit codes: 0 ok, 1 failed checks, 2 parse errors, 3 family
// refused as oversized, 4 construction failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "addcomb/addcomb.hpp"

using namespace addcomb;

namespace {

std::uint64_t max_order_from_env() {
    if (const char* env = std::getenv("ADDCOMB_MAX_ORDER")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw std::invalid_argument("ADDCOMB_MAX_ORDER is not an integer");
        }
    }
    return kDefaultMaxOrder;
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + out_path);
    f << text;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, sep)) out.push_back(part);
    return out;
}

struct SetStore {
    std::optional<GroupSpec> group;
    std::map<std::string, GroupSet> sets;

    void load_file(const std::string& path, std::uint64_t max_order) {
        std::ifstream f(path);
        if (!f) throw std::invalid_argument("cannot read set file: " + path);
        std::stringstream buf;
        buf << f.rdbuf();
        auto [g, parsed] = parse_set_file(buf.str(), max_order);
        group = g;
        for (auto& [name, s] : parsed) sets.insert_or_assign(name, s);
    }

    void add_literal(const std::string& literal) {
        if (!group) throw std::invalid_argument("--group must come before set literals");
        auto [name, s] = parse_set_literal(*group, literal);
        sets.insert_or_assign(name, s);
    }

    const GroupSet& get(const std::string& name) const {
        auto it = sets.find(name);
        if (it == sets.end()) throw std::invalid_argument("unknown set: " + name);
        return it->second;
    }

    // Accepts a plain set name, an alias "B=A", or a literal "B={1,2}".
    const GroupSet& resolve(const std::string& ref) {
        if (sets.count(ref)) return sets.at(ref);
        const auto eq = ref.find('=');
        if (eq != std::string::npos) {
            const std::string lhs = ref.substr(0, eq);
            const std::string rhs = ref.substr(eq + 1);
            if (sets.count(rhs)) {
                sets.insert_or_assign(lhs, sets.at(rhs));
                return sets.at(lhs);
            }
            add_literal(ref);
            return sets.at(lhs);
        }
        throw std::invalid_argument("unknown set: " + ref);
    }

    // first set defined (by name order) when a command wants a default A
    const GroupSet& first() const {
        if (sets.empty()) throw std::invalid_argument("no sets given");
        return sets.begin()->second;
    }
};

std::vector<ExtRational> parse_t_list(const std::string& text) {
    std::vector<ExtRational> out;
    for (const auto& part : split(text, ','))
        if (!part.empty()) out.push_back(parse_ext_rational(part));
    if (out.empty()) throw std::invalid_argument("empty T list");
    return out;
}

int run_compute(SetStore& store, const std::string& quantity, const ExtRational& T,
                unsigned tk_order, const SearchBudget& budget, const std::string& with_name,
                const std::string& out_path, const std::string& format) {
    const GroupSet& a = store.first();
    const GroupSet* b = &a;
    if (!with_name.empty()) b = &store.resolve(with_name);

    Json out;
    out["command"] = "compute";
    out["group"] = a.group().to_string();
    Json sets = Json::object();
    for (const auto& [name, s] : store.sets) sets[name] = s.elements();
    out["sets"] = sets;
    out["quantity"] = quantity;
    bool warned = false;

    auto push_result = [&](const QuantityResult& q) {
        out["result"] = to_json(q);
        warned = q.exactness != Exactness::exact;
    };

    if (quantity == "d") {
        push_result(doubling(a, *b));
    } else if (quantity == "s") {
        push_result(s_quantity(a, *b, T, budget));
    } else if (quantity == "e") {
        push_result(e_quantity(a, *b, T, budget));
    } else if (quantity == "K") {
        push_result(shift_ratio_K(a));
    } else if (quantity == "k") {
        push_result(longest_ap(a));
    } else if (quantity == "dim") {
        push_result(additive_dimension(a, budget));
    } else if (quantity == "petridis") {
        push_result(petridis_ratio(a, budget));
    } else if (quantity == "energy") {
        out["result"] = Json{{"kind", "energy"},
                             {"value", json_int(common_energy(a, *b).value)}};
    } else if (quantity == "tk") {
        out["result"] = Json{{"kind", "tk"},
                             {"k", tk_order},
                             {"value", json_int(t_k(a, tk_order))}};
    } else {
        throw std::invalid_argument("unknown quantity: " + quantity);
    }
    if (warned) out["warnings"] = Json::array({"result is a bound, not exact (budget)"});

    if (format == "csv") {
        std::string csv = "quantity,value,T,exactness\n";
        const Json& r = out["result"];
        std::string value;
        if (r.contains("value") && r["value"].is_object())
            value = r["value"]["num"].dump() + "/" + r["value"]["den"].dump();
        else if (r.contains("value"))
            value = r["value"].dump();
        csv += quantity + "," + value + "," + to_string(T) + "," +
               std::string(r.contains("exactness") ? r["exactness"].get<std::string>()
                                                   : "exact") +
               "\n";
        write_output(csv, out_path);
    } else {
        write_output(out.dump(2), out_path);
    }
    return 0;
}

int run_verify(const std::string& family, const std::string& checks_csv,
               const std::string& t_csv, const SearchBudget& budget,
               const std::string& out_path, const std::string& format,
               std::uint64_t max_order) {
    const FamilyDescriptor fd = parse_family(family);
    std::vector<std::string> checks = split(checks_csv, ',');
    checks.erase(std::remove_if(checks.begin(), checks.end(),
                                [](const std::string& s) { return s.empty(); }),
                 checks.end());
    if (checks.empty()) throw std::invalid_argument("no checks requested");
    const auto t_values = parse_t_list(t_csv);
    const FamilyRunSummary summary = run_family(fd, checks, t_values, budget, max_order);
    if (format == "csv")
        write_output(csv_of_reports(collect_reports(summary)), out_path);
    else
        write_output(to_json(summary).dump(2), out_path);
    std::cerr << "checked=" << summary.checked << " passed=" << summary.passed
              << " failed=" << summary.failed << " n/a=" << summary.na << "\n";
    return summary.failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact additive-combinatorics quantities and verification"};
    app.require_subcommand(1);

    std::string group_spec, with_name, out_path, format = "json";
    std::vector<std::string> set_literals;
    std::string set_file;
    std::string quantity = "d", t_text = "inf";
    unsigned tk_order = 2;
    SearchBudget budget;
    std::uint64_t seed = 1;
    unsigned max_attempts = 64;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--group", group_spec, "group spec, e.g. Z/12, F2^4, Z/4xZ/6");
        cmd->add_option("--set", set_literals, "set literal, e.g. \"A={0,1,2}\"");
        cmd->add_option("--set-file", set_file, "file: group line, then set literals");
        cmd->add_option("--with", with_name, "name of the second set");
        cmd->add_option("--budget-bits", budget.max_exact_bits,
                        "|A|+|B| cap for exhaustive search");
        cmd->add_option("--seed", seed, "RNG seed");
        cmd->add_option("--out", out_path, "output path (default stdout)");
        cmd->add_option("--format", format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
    };

    auto* compute = app.add_subcommand("compute", "compute a quantity for named sets");
    add_common(compute);
    compute->add_option("--quantity", quantity, "d|s|e|K|k|dim|petridis|energy|tk");
    compute->add_option("--T", t_text, "T parameter (rational or inf)");
    compute->add_option("--tk-k", tk_order, "k for the tk quantity");

    auto* verify = app.add_subcommand("verify", "run a verification family");
    std::string family, checks_csv;
    add_common(verify);
    verify->add_option("--family", family, "e.g. \"subsets(Z/12, max=6)\"")->required();
    verify->add_option("--checks", checks_csv, "comma list of checks")->required();
    verify->add_option("--T", t_text, "comma list of T values");

    auto* construct = app.add_subcommand("construct", "run a named construction");
    std::string cname;
    construct->add_option("name", cname,
                          "sidon|ap|subgroup|subgroup-union|random|direct-pair-random|"
                          "direct-pair-witness|complement-cover|exhaustion-cover|half-direct")
        ->required();
    add_common(construct);
    std::uint64_t size = 4, ap_start = 0, ap_diff = 1, ap_len = 2, wk = 1, wl = 1;
    std::string delta_text = "1/2", kappa_text = "1/4", generators_text, core_name = "A1",
                mstar_text = "1";
    construct->add_option("--size", size, "target size (sidon)");
    construct->add_option("--start", ap_start, "AP start element");
    construct->add_option("--diff", ap_diff, "AP difference element");
    construct->add_option("--len", ap_len, "AP length");
    construct->add_option("--delta", delta_text, "sampling probability (random)");
    construct->add_option("--kappa", kappa_text, "kappa parameter");
    construct->add_option("--generators", generators_text,
                          "subgroup generators, e.g. \"1,2\" or \"1,2;4,8\"");
    construct->add_option("--core", core_name, "name of the core set (covers)");
    construct->add_option("--m-star", mstar_text, "M_star parameter (exhaustion-cover)");
    construct->add_option("--max-attempts", max_attempts, "retry cap (direct-pair-random)");
    construct->add_option("--k", wk, "witness |X| (direct-pair-witness)");
    construct->add_option("--l", wl, "witness |Y| (direct-pair-witness)");

    auto* experiment = app.add_subcommand("experiment", "run a named experiment");
    std::string ename, deltas_text = "1/4,1/16";
    unsigned trials = 20;
    experiment->add_option("name", ename, "random-S")->required();
    add_common(experiment);
    experiment->add_option("--deltas", deltas_text, "comma list of sampling probabilities");
    experiment->add_option("--trials", trials, "trials per delta");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        const std::uint64_t max_order = max_order_from_env();
        budget.seed = seed;
        budget.validate();

        SetStore store;
        if (!set_file.empty()) store.load_file(set_file, max_order);
        if (!group_spec.empty()) store.group = parse_group_spec(group_spec, max_order);
        for (const auto& lit : set_literals) store.add_literal(lit);

        if (app.got_subcommand(compute)) {
            return run_compute(store, quantity, parse_ext_rational(t_text), tk_order, budget,
                               with_name, out_path, format);
        }
        if (app.got_subcommand(verify)) {
            return run_verify(family, checks_csv, t_text, budget, out_path, format, max_order);
        }
        if (app.got_subcommand(construct)) {
            if (!store.group) throw std::invalid_argument("--group (or --set-file) required");
            const GroupSpec& g = *store.group;
            Json out;
            out["command"] = "construct";
            out["name"] = cname;
            out["group"] = g.to_string();
            out["seed"] = seed;
            if (cname == "sidon") {
                const GroupSet s = make_sidon(g, size, seed);
                out["set"] = to_json(s);
                out["verified_sidon"] = is_sidon(s);
            } else if (cname == "ap") {
                out["set"] = to_json(make_ap(g, ap_start, ap_diff, ap_len));
            } else if (cname == "subgroup") {
                std::vector<Element> gens;
                for (const auto& t : split(generators_text, ','))
                    if (!t.empty()) gens.push_back(std::stoull(t));
                out["set"] = to_json(make_subgroup(g, gens));
            } else if (cname == "subgroup-union") {
                std::vector<GroupSet> hs;
                for (const auto& part : split(generators_text, ';')) {
                    std::vector<Element> gens;
                    for (const auto& t : split(part, ','))
                        if (!t.empty()) gens.push_back(std::stoull(t));
                    hs.push_back(make_subgroup(g, gens));
                }
                const GroupSet u = make_subgroup_union(g, hs);
                out["set"] = to_json(u);
                out["size"] = u.size();
            } else if (cname == "random") {
                out["set"] = to_json(sample_random_set(g, parse_rational(delta_text), seed));
            } else if (cname == "direct-pair-random") {
                const GroupSet& a = store.get("A");
                const GroupSet& b = with_name.empty() ? a : store.resolve(with_name);
                const auto trace =
                    direct_pair_random(a, b, parse_rational(kappa_text), seed, max_attempts);
                out["trace"] = to_json(trace);
                write_output(out.dump(2), out_path);
                return trace.success ? 0 : 4;
            } else if (cname == "direct-pair-witness") {
                const GroupSet& a = store.get("A");
                const GroupSet& b = with_name.empty() ? a : store.resolve(with_name);
                const auto w = direct_pair_witness(a, b, wk, wl, budget);
                out["status"] = w.status == WitnessStatus::found    ? "found"
                                : w.status == WitnessStatus::absent ? "absent"
                                                                    : "unknown";
                out["hypotheses_met"] = w.hypotheses_met;
                if (w.x) out["X"] = to_json(*w.x);
                if (w.y) out["Y"] = to_json(*w.y);
                out["notes"] = w.notes;
            } else if (cname == "complement-cover") {
                const auto w = maximal_direct_complement(store.get(core_name), store.get("A"));
                out["cover"] = to_json(w);
                write_output(out.dump(2), out_path);
                return w.verified ? 0 : 4;
            } else if (cname == "exhaustion-cover") {
                const auto w = exhaustion_cover(store.get("A"), store.get(core_name),
                                                parse_rational(mstar_text), budget);
                out["cover"] = to_json(w);
                write_output(out.dump(2), out_path);
                return w.verified ? 0 : 4;
            } else if (cname == "half-direct") {
                const auto r = half_direct_search(store.get("A"), parse_rational(kappa_text),
                                                  budget);
                out["X"] = to_json(r.x);
                out["Y"] = to_json(r.y);
                out["value"] = to_json(r.value);
                out["exactness"] = to_string(r.exactness);
            } else {
                throw std::invalid_argument("unknown construction: " + cname);
            }
            write_output(out.dump(2), out_path);
            return 0;
        }
        if (app.got_subcommand(experiment)) {
            if (ename != "random-S") throw std::invalid_argument("unknown experiment: " + ename);
            if (!store.group) throw std::invalid_argument("--group required");
            std::vector<Rational> deltas;
            for (const auto& d : split(deltas_text, ','))
                if (!d.empty()) deltas.push_back(parse_rational(d));
            const auto e = experiment_random_s(*store.group, deltas, trials, seed, budget);
            if (format == "csv")
                write_output(csv_of_experiment(e), out_path);
            else
                write_output(to_json(e).dump(2), out_path);
            for (const auto& t : e.trend)
                if (t.outcome == Outcome::fail) return 1;
            return 0;
        }
    } catch (const FamilyTooLarge& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ConstructionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
