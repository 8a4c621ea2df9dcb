// sfekit: generate trusted-randomness resources, analyze finite functions,
// evaluate feasibility bounds, and run the extraction attack on final-state
// protocol models.
//
// Exit codes: 0 ok/feasible, 1 infeasible or failed predicate, 2 usage or
// input error, 3 attack simulation below its proven lower bound.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "sfe/acceptance.hpp"
#include "sfe/attack.hpp"
#include "sfe/bounds.hpp"
#include "sfe/serialize.hpp"

namespace {

using sfe::Json;

struct GlobalOptions {
    double tol = sfe::kDefaultTol;
    std::uint64_t seed = sfe::kDefaultSeed;
    std::string out;
    std::string format = "json";
    std::string eps_prime = "theorem";

    sfe::EpsPrimeVariant variant() const {
        return eps_prime == "proof" ? sfe::EpsPrimeVariant::Proof
                                    : sfe::EpsPrimeVariant::Theorem;
    }
};

void emit(const GlobalOptions& opts, const Json& j) {
    if (opts.out.empty())
        std::cout << j.dump(2) << "\n";
    else
        sfe::write_json_file(opts.out, j);
}

void emit_csv(const GlobalOptions& opts, const std::vector<std::string>& header,
              const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream os;
    for (std::size_t i = 0; i < header.size(); ++i)
        os << (i ? "," : "") << header[i];
    os << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
        os << "\n";
    }
    if (opts.out.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream file(opts.out);
        sfe::require(file.good(), "cannot open file for writing: " + opts.out);
        file << os.str();
    }
}

std::string num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::vector<double> parse_eps_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            sfe::fail("cannot parse eps value: " + item);
        }
    }
    sfe::require(!out.empty(), "empty eps list");
    std::sort(out.begin(), out.end());
    return out;
}

sfe::FunctionTable resolve_function(const std::string& name, int n, int k) {
    if (name.find('(') != std::string::npos) return sfe::builtin_function(name);
    sfe::require(n > 0, "builtin function " + name + " needs --n");
    if (name == "ip") return sfe::ip_func(n);
    if (name == "eq") return sfe::eq_func(n);
    if (name == "eq_restricted") {
        sfe::require(k > 0, "eq_restricted needs --k");
        return sfe::eq_restricted_func(n, k);
    }
    if (name == "ot") {
        sfe::require(k > 0, "ot needs --k");
        return sfe::ot_func(n, k);
    }
    sfe::fail("unknown builtin function: " + name);
}

std::vector<std::string> resolve_order(const std::string& order,
                                       const sfe::FunctionTable& f) {
    if (order.empty() || order == "all") return f.y_labels;
    std::vector<std::string> out;
    std::stringstream ss(order);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

// ---------------------------------------------------------------------------

int run_bound(const GlobalOptions& opts, const std::string& sub,
              const std::map<std::string, double>& nums, const std::vector<double>& eps_list,
              bool has_m, int m_val) {
    auto get = [&](const std::string& key) {
        auto it = nums.find(key);
        sfe::require(it != nums.end(), "missing parameter --" + key);
        return it->second;
    };

    if (sub == "thm1") {
        double threshold = sfe::thm1_threshold(int(get("x")), int(get("y")));
        emit(opts, Json{{"bound", "thm1_threshold"},
                        {"inputs", {{"x", get("x")}, {"y", get("y")}}},
                        {"threshold", threshold}});
        return 0;
    }
    if (sub == "prop1") {
        Json sweeps = Json::array();
        std::vector<std::vector<std::string>> rows;
        for (double eps : eps_list) {
            auto r = sfe::prop1_success(eps, int(get("m")));
            sweeps.push_back(Json{{"eps", eps},
                                  {"m", get("m")},
                                  {"simple", r.simple},
                                  {"exact_chain", r.exact_chain}});
            rows.push_back({num(eps), num(get("m")), num(r.simple), num(r.exact_chain)});
        }
        if (opts.format == "csv")
            emit_csv(opts, {"eps", "m", "simple", "exact_chain"}, rows);
        else
            emit(opts, eps_list.size() == 1 ? sweeps[0] : Json{{"sweep", sweeps}});
        return 0;
    }
    if (sub == "cor4") {
        Json sweeps = Json::array();
        std::vector<std::vector<std::string>> rows;
        for (double eps : eps_list) {
            double raw = sfe::cor4_min_m(int(get("n")), int(get("k")), eps);
            double min_m = std::max(0.0, std::ceil(raw - 1e-12));
            sweeps.push_back(Json{{"n", get("n")}, {"k", get("k")}, {"eps", eps},
                                  {"rhs", raw}, {"min_m", min_m}});
            rows.push_back({num(get("n")), num(get("k")), num(eps), num(raw), num(min_m)});
        }
        if (opts.format == "csv")
            emit_csv(opts, {"n", "k", "eps", "rhs", "min_m"}, rows);
        else
            emit(opts, eps_list.size() == 1 ? sweeps[0] : Json{{"sweep", sweeps}});
        return 0;
    }

    // Report-shaped bounds.
    std::vector<sfe::BoundReport> reports;
    Json extras = Json::array();
    for (double eps : eps_list) {
        if (sub == "thm2") {
            reports.push_back(sfe::thm2_check(get("entropy-sum"), get("t"), long(get("x")),
                                              long(get("y")), eps, opts.variant()));
        } else if (sub == "cor3") {
            auto res = sfe::cor3_check(int(get("n")), int(get("m")), eps);
            extras.push_back(Json{{"minimal_eps", res.minimal_eps},
                                  {"chain_closed_form", res.chain_closed_form}});
            reports.push_back(std::move(res.report));
        } else if (sub == "cor5") {
            int n = int(get("n"));
            int m = has_m ? m_val
                          : int(std::max(0.0, std::ceil(sfe::cor5_rhs(n, eps) / 2.0 - 1e-12)));
            reports.push_back(sfe::cor5_check(n, eps, m));
        } else if (sub == "cor6") {
            int k = int(get("k"));
            int m = has_m ? m_val
                          : int(std::max(0.0, std::ceil(sfe::cor6_rhs(k, eps) / 2.0 - 1e-12)));
            reports.push_back(sfe::cor6_check(k, eps, m));
        } else {
            sfe::fail("unknown bound: " + sub);
        }
    }

    bool all_feasible = true;
    Json sweeps = Json::array();
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        all_feasible = all_feasible && r.feasible;
        Json j = sfe::to_json(r);
        if (sub == "cor3") {
            j["minimal_eps"] = extras[i]["minimal_eps"];
            j["chain_closed_form"] = extras[i]["chain_closed_form"];
        }
        sweeps.push_back(std::move(j));
        if (header.empty()) {
            for (const auto& [k, v] : r.inputs) header.push_back(k);
            header.insert(header.end(), {"lhs", "rhs", "slack", "feasible"});
        }
        std::vector<std::string> row;
        for (const auto& [k, v] : r.inputs) row.push_back(num(v));
        row.insert(row.end(), {num(r.lhs), num(r.rhs), num(r.slack),
                               r.feasible ? "true" : "false"});
        rows.push_back(std::move(row));
    }
    if (opts.format == "csv")
        emit_csv(opts, header, rows);
    else
        emit(opts, reports.size() == 1 ? sweeps[0] : Json{{"sweep", sweeps}});
    return all_feasible ? 0 : 1;
}

// ---------------------------------------------------------------------------

int run_attack(const GlobalOptions& opts, const sfe::ProtocolInstance& p,
               const std::string& order_text) {
    auto order = resolve_order(order_text, p.f);
    double eps_corr = sfe::check_correctness(p);
    double eps_sec = sfe::check_bob_security(p);
    double eps_eff = std::max(eps_corr, eps_sec);
    auto result = sfe::extraction_attack(p, order);
    auto bounds = sfe::prop1_success(eps_eff, static_cast<int>(order.size()));

    Json j = sfe::to_json(result);
    j["eps_correctness"] = eps_corr;
    j["eps_bob_security"] = eps_sec;
    j["prop1_simple"] = bounds.simple;
    j["prop1_exact_chain"] = bounds.exact_chain;
    bool respected = result.joint_success >= bounds.simple - sfe::kDefaultTol &&
                     result.joint_success >= bounds.exact_chain - sfe::kDefaultTol;
    j["prop1_respected"] = respected;
    emit(opts, j);
    return respected ? 0 : 3;
}

int dispatch(int argc, char** argv) {
    GlobalOptions opts;
    CLI::App app{"analysis toolkit for one-sided secure function evaluation reductions"};
    app.require_subcommand(1);
    app.add_option("--tol", opts.tol, "numerical tolerance");
    app.add_option("--seed", opts.seed, "seed for randomized batteries");
    app.add_option("--out", opts.out, "output path (default: stdout)");
    app.add_option("--format", opts.format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--eps-prime", opts.eps_prime, "theorem|proof variant of eps'")
        ->check(CLI::IsMember({"theorem", "proof"}));

    // ---- bound ----
    auto* bound = app.add_subcommand("bound", "evaluate a closed-form bound");
    bound->require_subcommand(1);
    struct BoundArgs {
        double entropy_sum = 0, t = 0;
        int x = 0, y = 0, n = 0, k = 0, m = 0;
        std::string eps = "0";
        bool has_m = false;
    } ba;
    for (const char* name : {"thm2", "cor3", "cor4", "cor5", "cor6", "prop1", "thm1"}) {
        auto* sub = bound->add_subcommand(name);
        if (std::string(name) == "thm2") {
            sub->add_option("--entropy-sum", ba.entropy_sum)->required();
            sub->add_option("--t", ba.t)->required();
            sub->add_option("--x", ba.x)->required();
            sub->add_option("--y", ba.y)->required();
        }
        if (std::string(name) == "thm1") {
            sub->add_option("--x", ba.x)->required();
            sub->add_option("--y", ba.y)->required();
        }
        if (std::string(name) == "cor3" || std::string(name) == "cor4" ||
            std::string(name) == "cor5")
            sub->add_option("--n", ba.n);
        if (std::string(name) == "cor4" || std::string(name) == "cor6")
            sub->add_option("--k", ba.k);
        if (std::string(name) == "cor3" || std::string(name) == "prop1")
            sub->add_option("--m", ba.m)->required();
        if (std::string(name) == "cor5" || std::string(name) == "cor6")
            sub->add_option("--m", ba.m)->each([&](const std::string&) { ba.has_m = true; });
        if (std::string(name) != "thm1") sub->add_option("--eps", ba.eps);
    }

    // ---- primitive ----
    auto* prim = app.add_subcommand("primitive", "generate / transform resources");
    prim->require_subcommand(1);
    struct PrimArgs {
        int n = 2, k = 1;
        double p = 0.5;
        std::string in;
    } pa;
    auto* otkey = prim->add_subcommand("otkey", "oblivious key for 1-of-n OT of k-bit strings");
    otkey->add_option("--n", pa.n);
    otkey->add_option("--k", pa.k);
    auto* rabin = prim->add_subcommand("rabin", "Rabin-style erasure key");
    rabin->add_option("--p", pa.p);
    rabin->add_option("--k", pa.k);
    auto* reduce = prim->add_subcommand("reduce", "minimum sufficient statistics");
    reduce->add_option("input", pa.in)->required();
    auto* embed = prim->add_subcommand("embed", "purified resource state");
    embed->add_option("input", pa.in)->required();
    auto* entropy_cmd = prim->add_subcommand("entropy", "conditional max-entropies");
    entropy_cmd->add_option("input", pa.in)->required();

    // ---- function ----
    auto* fn = app.add_subcommand("function", "finite function analysis");
    fn->require_subcommand(1);
    struct FnArgs {
        std::string name, in;
        int n = 0, k = 0;
    } fa;
    auto* builtin = fn->add_subcommand("builtin", "emit a builtin table");
    builtin->add_option("--name", fa.name)->required();
    builtin->add_option("--n", fa.n);
    builtin->add_option("--k", fa.k);
    auto* check = fn->add_subcommand("check", "non-triviality / non-redundancy predicates");
    check->add_option("input", fa.in);
    check->add_option("--builtin", fa.name);
    check->add_option("--n", fa.n);
    check->add_option("--k", fa.k);
    auto* tcmd = fn->add_subcommand("t", "concealment parameter");
    tcmd->add_option("input", fa.in);
    tcmd->add_option("--builtin", fa.name);
    tcmd->add_option("--n", fa.n);
    tcmd->add_option("--k", fa.k);

    // ---- attack ----
    auto* attack = app.add_subcommand("attack", "run the extraction attack");
    attack->require_subcommand(1);
    struct AttackArgs {
        std::string function, in, order;
        int n = 0, k = 0;
        double noise = 0;
    } aa;
    auto* canonical = attack->add_subcommand("canonical", "attack the reference protocol");
    canonical->add_option("--function", aa.function)->required();
    canonical->add_option("--n", aa.n);
    canonical->add_option("--k", aa.k);
    canonical->add_option("--noise", aa.noise);
    canonical->add_option("--order", aa.order);
    auto* run = attack->add_subcommand("run", "attack a protocol file");
    run->add_option("input", aa.in)->required();
    run->add_option("--order", aa.order);

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "run the acceptance battery");
    std::string filter;
    verify->add_option("--filter", filter, "run only criteria whose name contains this");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    if (bound->parsed()) {
        auto* sub = bound->get_subcommands().front();
        std::map<std::string, double> nums = {
            {"entropy-sum", ba.entropy_sum}, {"t", ba.t}, {"x", double(ba.x)},
            {"y", double(ba.y)},             {"n", double(ba.n)}, {"k", double(ba.k)},
            {"m", double(ba.m)}};
        return run_bound(opts, sub->get_name(), nums, parse_eps_list(ba.eps), ba.has_m,
                         ba.m);
    }

    if (prim->parsed()) {
        if (otkey->parsed() || rabin->parsed()) {
            auto dist = otkey->parsed() ? sfe::oblivious_key(pa.n, pa.k)
                                        : sfe::rabin_key(pa.p, pa.k);
            std::string path = opts.out;
            if (path.empty())
                path = otkey->parsed() ? "otkey_" + std::to_string(pa.n) + "_" +
                                             std::to_string(pa.k) + ".json"
                                       : "rabin_" + std::to_string(pa.k) + ".json";
            sfe::write_json_file(path, sfe::to_json(dist));
            std::cout << Json{{"written", path},
                              {"u_size", dist.u_size()},
                              {"v_size", dist.v_size()},
                              {"support", dist.support()},
                              {"entropy_sum", sfe::entropy_sum(dist)}}
                             .dump(2)
                      << "\n";
            return 0;
        }
        auto dist = sfe::joint_from_json(sfe::load_json_file(pa.in));
        if (reduce->parsed()) {
            auto reduced = sfe::min_sufficient_stat(dist);
            std::string path = opts.out.empty()
                                   ? std::filesystem::path(pa.in).stem().string() +
                                         "_reduced.json"
                                   : opts.out;
            sfe::write_json_file(path, sfe::to_json(reduced));
            std::cout << Json{{"written", path},
                              {"u_size", reduced.u_size()},
                              {"v_size", reduced.v_size()}}
                             .dump(2)
                      << "\n";
            return 0;
        }
        if (embed->parsed()) {
            auto resource = sfe::embed_pure(dist);
            std::string path = opts.out.empty()
                                   ? std::filesystem::path(pa.in).stem().string() +
                                         "_embedded.json"
                                   : opts.out;
            sfe::write_json_file(path, sfe::to_json(resource.state));
            std::cout << Json{{"written", path},
                              {"total_dim", resource.state.layout.total_dim()}}
                             .dump(2)
                      << "\n";
            return 0;
        }
        // entropy
        emit(opts, Json{{"hmax_uv", sfe::cond_max_entropy_u_given_v(dist)},
                        {"hmax_vu", sfe::cond_max_entropy_v_given_u(dist)},
                        {"sum", sfe::entropy_sum(dist)}});
        return 0;
    }

    if (fn->parsed()) {
        auto load = [&]() {
            if (!fa.in.empty())
                return sfe::function_from_json(sfe::load_json_file(fa.in));
            sfe::require(!fa.name.empty(), "need a table file or --builtin");
            return resolve_function(fa.name, fa.n, fa.k);
        };
        if (builtin->parsed()) {
            auto f = resolve_function(fa.name, fa.n, fa.k);
            if (opts.out.empty())
                std::cout << sfe::to_json(f).dump(2) << "\n";
            else {
                sfe::write_json_file(opts.out, sfe::to_json(f));
                std::cout << Json{{"written", opts.out},
                                  {"x_size", f.x_size()},
                                  {"y_size", f.y_size()}}
                                 .dump(2)
                          << "\n";
            }
            return 0;
        }
        auto f = load();
        if (check->parsed()) {
            auto tr = sfe::is_non_trivial(f);
            auto rr = sfe::is_non_redundant(f);
            Json j{{"non_trivial", tr.non_trivial}, {"non_redundant", rr.non_redundant}};
            if (tr.witness_y) j["witness_y"] = *tr.witness_y;
            if (rr.witness) j["witness_pair"] = Json::array({rr.witness->first,
                                                             rr.witness->second});
            emit(opts, j);
            return tr.non_trivial && rr.non_redundant ? 0 : 1;
        }
        // t
        auto [t, argmin] = sfe::concealment_t_argmin(f);
        Json j{{"t", t}, {"argmin_y", argmin}};
        if (fa.name == "eq_restricted" && fa.k > 0) {
            j["exact_expression"] = "(1-2^-k) * log2(2^k - 1)";
            j["paper_expression_value"] = (1.0 - std::pow(2.0, -fa.k)) * fa.k;
        }
        emit(opts, j);
        return 0;
    }

    if (attack->parsed()) {
        sfe::ProtocolInstance p =
            canonical->parsed()
                ? sfe::canonical_protocol(resolve_function(aa.function, aa.n, aa.k), aa.noise)
                : sfe::protocol_from_json(sfe::load_json_file(aa.in));
        return run_attack(opts, p, aa.order);
    }

    // verify
    auto results = sfe::acceptance::run_all(opts.seed, filter);
    for (const auto& r : results) {
        std::ostringstream line;
        line.precision(3);
        line << (r.passed ? "[PASS] " : "[FAIL] ") << r.number << ". " << r.name << " ("
             << std::fixed << r.seconds << " s)";
        if (!r.detail.empty()) line << " -- " << r.detail;
        std::cout << line.str() << "\n";
    }
    bool ok = sfe::acceptance::all_passed(results) && !results.empty();
    std::cout << (ok ? "all criteria passed" : "FAILURES present") << "\n";
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const sfe::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
