#ifndef MSLAB_TOOLS_CLI_HPP
#define MSLAB_TOOLS_CLI_HPP

#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <mslab/mslab.hpp>

namespace mslab::cli {

enum ExitCode : int {
    kOk = 0,
    kViolation = 1, ///< a verified property failed
    kUsage = 2,     ///< bad arguments or bad input files
    kBudget = 3,    ///< node budget exhausted, result inconclusive
};

enum class Format { json, csv };

struct CliConfig {
    std::string command;
    std::string a, b, z, input;
    std::string x_list, y_list;
    std::string t, s, delta;
    std::optional<int> p, q, m;
    int n = 3;
    int count = -1;
    int max_n = 3;
    std::int64_t max_entry = 10;
    std::uint64_t seed = 1;
    bool random_seed = false;
    std::optional<std::uint64_t> node_budget;
    Format format = Format::json;
    std::string out;
    bool allow_pseudometric = false;
    bool general_position = false;
    bool verify = false;
    bool inject_fault = false;
    std::string name;
};

inline std::vector<int> parse_index_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            throw Error(ErrorCode::ParseError, "empty entry in index list '" + text + "'");
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(item, &used);
        } catch (const std::exception&) {
            throw Error(ErrorCode::ParseError, "bad index '" + item + "'");
        }
        if (used != item.size())
            throw Error(ErrorCode::ParseError, "bad index '" + item + "'");
        out.push_back(v);
    }
    if (out.empty())
        throw Error(ErrorCode::EmptySubset, "index list is empty");
    return out;
}

inline std::vector<Rat> parse_rat_list(const std::string& text) {
    std::vector<Rat> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_rat(item));
    if (out.empty())
        throw Error(ErrorCode::ParseError, "empty rational list");
    return out;
}

inline std::uint64_t resolve_budget(const CliConfig& cfg) {
    if (cfg.node_budget)
        return *cfg.node_budget;
    if (const char* env = std::getenv("MSLAB_NODE_BUDGET")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw Error(ErrorCode::ParseError, std::string("MSLAB_NODE_BUDGET is not an integer: ") + env);
        }
    }
    return kDefaultNodeBudget;
}

class Runner {
public:
    Runner(CliConfig cfg, std::ostream& out, std::ostream& err) : cfg_(std::move(cfg)), out_(out), err_(err) {}

    int run() {
        if (cfg_.random_seed) {
            std::random_device rd;
            cfg_.seed = (std::uint64_t{rd()} << 32) | rd();
            err_ << "seed " << cfg_.seed << "\n";
        }
        const auto& c = cfg_.command;
        if (c == "validate") return cmd_validate();
        if (c == "gen") return cmd_gen();
        if (c == "diam") return cmd_diam();
        if (c == "hausdorff") return cmd_hausdorff();
        if (c == "gh") return cmd_gh();
        if (c == "hyperspace") return cmd_hyperspace();
        if (c == "closed-form") return cmd_closed_form();
        if (c == "verify-embedding") return cmd_verify_embedding();
        if (c == "verify-gamma") return cmd_verify_gamma();
        if (c == "sweep-nonexpansion") return cmd_sweep();
        if (c == "probe-isometry") return cmd_probe();
        if (c == "table-simplex") return cmd_table();
        err_ << "unknown command '" << c << "'\n";
        return kUsage;
    }

private:
    void emit(const std::string& text) {
        if (cfg_.out.empty())
            out_ << text;
        else
            write_text_file_atomic(cfg_.out, text);
    }

    static std::string need(const std::string& value, const char* flag) {
        if (value.empty())
            throw Error(ErrorCode::InvalidParameter, std::string("missing ") + flag);
        return value;
    }

    template <typename T>
    static T need(const std::optional<T>& value, const char* flag) {
        if (!value)
            throw Error(ErrorCode::InvalidParameter, std::string("missing ") + flag);
        return *value;
    }

    SpaceFile load(const std::string& path, const char* flag) {
        return read_space_file(need(path, flag), {.allow_pseudometric = cfg_.allow_pseudometric});
    }

    Subset subset_arg(const std::string& list, const char* flag, int ambient) {
        auto idx = parse_index_list(need(list, flag));
        return Subset::from_indices(std::span<const int>(idx), ambient);
    }

    int cmd_validate() {
        auto file = load(cfg_.input, "--input");
        ordered_json doc;
        doc["valid"] = true;
        doc["n"] = file.space.size();
        doc["pseudometric"] = file.space.pseudometric();
        emit(doc.dump() + "\n");
        return kOk;
    }

    int cmd_gen() {
        if (cfg_.n < 1)
            throw Error(ErrorCode::InvalidParameter, "--n must be >= 1");
        auto space = cfg_.general_position ? random_general_position_space(cfg_.n, cfg_.seed, cfg_.max_entry)
                                           : random_space(cfg_.n, cfg_.seed, cfg_.max_entry);
        std::optional<std::string> name;
        if (!cfg_.name.empty())
            name = cfg_.name;
        emit(write_space_json(space, name));
        return kOk;
    }

    int cmd_diam() {
        auto file = load(cfg_.input, "--input");
        auto de = diam_eps(file.space);
        ordered_json doc;
        doc["n"] = file.space.size();
        doc["diam"] = to_string(de.diam);
        doc["eps"] = de.eps ? to_string(*de.eps) : "inf";
        emit(doc.dump() + "\n");
        return kOk;
    }

    int cmd_hausdorff() {
        auto z = load(cfg_.z, "--z").space;
        auto x = subset_arg(cfg_.x_list, "--x", z.size());
        auto y = subset_arg(cfg_.y_list, "--y", z.size());
        auto gap = subset_gap(z, x, y);
        ordered_json doc;
        doc["hausdorff"] = to_string(hausdorff_distance(z, x, y));
        doc["inf"] = to_string(gap.inf);
        doc["sup"] = to_string(gap.sup);
        emit(doc.dump() + "\n");
        return kOk;
    }

    int cmd_gh() {
        auto a = load(cfg_.a, "--a").space;
        auto b = load(cfg_.b, "--b").space;
        auto result = gh_exact(a, b, resolve_budget(cfg_));
        auto bounds = gh_bounds(a, b);
        ordered_json doc;
        doc["distance"] = to_string(result.distance);
        doc["status"] = to_string(result.status);
        doc["nodes_explored"] = result.nodes_explored;
        doc["lower"] = to_string(bounds.lower);
        doc["upper"] = to_string(bounds.upper);
        doc["witness"] = witness_json(result.witness, distortion(result.witness, a, b));
        emit(doc.dump() + "\n");
        return result.status == GhStatus::exact ? kOk : kBudget;
    }

    int cmd_hyperspace() {
        auto file = load(cfg_.input, "--input");
        auto h = build_hyperspace(file.space);
        std::optional<std::string> name;
        if (file.name)
            name = "H(" + *file.name + ")";
        emit(write_space_json(h.metric, name));
        if (!cfg_.out.empty())
            write_text_file_atomic(cfg_.out + ".members.json", write_members_json(h));
        return kOk;
    }

    int cmd_closed_form() {
        ordered_json doc;
        std::optional<Rat> closed;
        std::optional<std::pair<FiniteMetricSpace, FiniteMetricSpace>> pair;
        if (!cfg_.s.empty()) {
            Rat t = parse_rat(need(cfg_.t, "--t"));
            Rat s = parse_rat(cfg_.s);
            int p = need(cfg_.p, "--p");
            int q = need(cfg_.q, "--q");
            closed = gh_simplex_simplex(t, p, s, q);
            doc["kind"] = "simplex-simplex";
            if (cfg_.verify)
                pair.emplace(simplex(p, t), simplex(q, s));
        } else if (cfg_.m) {
            Rat t = parse_rat(need(cfg_.t, "--t"));
            auto space = load(cfg_.input, "--input").space;
            closed = gh_simplex_vs_finite(t, *cfg_.m, space);
            doc["kind"] = "simplex-finite";
            if (cfg_.verify)
                pair.emplace(simplex(*cfg_.m, t), space);
        } else if (!cfg_.delta.empty()) {
            Rat t = parse_rat(need(cfg_.t, "--t"));
            int p = need(cfg_.p, "--p");
            auto space = load(cfg_.input, "--input").space;
            auto bounds = gh_simplex_vs_delta_connected(t, p, space, parse_rat(cfg_.delta));
            doc["kind"] = "simplex-delta-connected";
            doc["lower"] = to_string(bounds.lower);
            doc["upper"] = to_string(bounds.upper);
            int code = kOk;
            if (cfg_.verify) {
                auto exact = gh_exact(simplex(p, t), space, resolve_budget(cfg_));
                doc["exact"] = to_string(exact.distance);
                doc["status"] = to_string(exact.status);
                if (exact.status != GhStatus::exact)
                    code = kBudget;
                else if (exact.distance < bounds.lower || exact.distance > bounds.upper)
                    code = kViolation;
            }
            emit(doc.dump() + "\n");
            return code;
        } else {
            auto space = load(cfg_.input, "--input").space;
            closed = gh_one_point(space);
            doc["kind"] = "one-point";
            if (cfg_.verify)
                pair.emplace(simplex(1, Rat(1)), space);
        }
        doc["distance"] = to_string(*closed);
        int code = kOk;
        if (pair) {
            auto exact = gh_exact(pair->first, pair->second, resolve_budget(cfg_));
            doc["exact"] = to_string(exact.distance);
            doc["status"] = to_string(exact.status);
            if (exact.status != GhStatus::exact)
                code = kBudget;
            else if (exact.distance != *closed)
                code = kViolation;
        }
        emit(doc.dump() + "\n");
        return code;
    }

    int cmd_verify_embedding() {
        auto z = load(cfg_.z, "--z").space;
        auto x = subset_arg(cfg_.x_list, "--x", z.size());
        auto y = subset_arg(cfg_.y_list, "--y", z.size());
        auto check = verify_embedding_theorem(z, x, y);
        if (cfg_.inject_fault)
            check.lhs = verify_embedding_theorem(scaled(z, Rat(2)), x, y).lhs;
        ordered_json doc;
        doc["lhs"] = to_string(check.lhs);
        doc["rhs"] = to_string(check.rhs);
        doc["equal"] = check.lhs == check.rhs;
        emit(doc.dump() + "\n");
        return check.lhs == check.rhs ? kOk : kViolation;
    }

    int cmd_verify_gamma() {
        auto z = load(cfg_.z, "--z").space;
        auto x = subset_arg(cfg_.x_list, "--x", z.size());
        auto y = subset_arg(cfg_.y_list, "--y", z.size());
        auto report = check_gamma_identities(z, x, y);
        int mismatches = 0;
        std::string first_mismatch;
        auto lifted_z = cfg_.inject_fault ? scaled(z, Rat(2)) : z;
        for_each_nonempty_submask(x.bits(), [&](std::uint64_t bits) {
            auto a = Subset::from_bits(bits, z.size());
            auto enumerated = subset_to_hyperspace_distance(z, a, y).via_enum;
            auto via_gamma = subset_to_hyperspace_distance(lifted_z, a, y).via_gamma;
            if (enumerated != via_gamma) {
                if (mismatches++ == 0)
                    first_mismatch = "A=" + a.to_string() + ": enum " + to_string(enumerated) + " vs gamma " +
                                     to_string(via_gamma);
            }
        });
        ordered_json doc;
        doc["passed"] = report.passed && mismatches == 0;
        doc["failed_clause"] = report.failed_clause;
        doc["counterexample"] = report.counterexample;
        doc["subsets_checked"] = report.subsets_checked;
        doc["hyperspace_distance_mismatches"] = mismatches;
        if (mismatches)
            doc["first_mismatch"] = first_mismatch;
        emit(doc.dump() + "\n");
        return report.passed && mismatches == 0 ? kOk : kViolation;
    }

    std::string render(const SweepReport& report) {
        return cfg_.format == Format::csv ? sweep_report_csv(report) : sweep_report_json(report);
    }

    int sweep_exit(const SweepReport& report) {
        if (report.summary.violations > 0)
            return kViolation;
        if (report.summary.inconclusive > 0)
            return kBudget;
        return kOk;
    }

    int cmd_sweep() {
        SweepOptions opt;
        opt.count = cfg_.count < 0 ? 300 : cfg_.count;
        opt.max_n = cfg_.max_n;
        opt.seed = cfg_.seed;
        opt.max_entry = cfg_.max_entry;
        opt.node_budget = resolve_budget(cfg_);
        auto report = nonexpansion_sweep(opt);
        if (cfg_.inject_fault) {
            // Test hook: solve the hyperspace level on a stretched copy of H(X).
            for (auto& row : report.rows) {
                auto hx = scaled(build_hyperspace(row.x).metric, Rat(3));
                auto lifted = gh_exact(hx, build_hyperspace(row.y).metric, opt.node_budget);
                row.d_hxhy = lifted.distance;
                row.gap = row.d_xy - row.d_hxhy;
                row.witness_h = lifted.witness;
            }
            report.summary = summarize(report.rows);
        }
        emit(render(report));
        return sweep_exit(report);
    }

    int cmd_probe() {
        int count = cfg_.count < 0 ? 200 : cfg_.count;
        auto report = isometry_probe(count, cfg_.n, cfg_.seed, cfg_.max_entry, resolve_budget(cfg_));
        emit(render(report));
        return sweep_exit(report);
    }

    int cmd_table() {
        int p_max = cfg_.p.value_or(3);
        std::vector<Rat> ts = cfg_.t.empty() ? std::vector<Rat>{Rat(1, 2), Rat(1), Rat(3, 2), Rat(2)}
                                             : parse_rat_list(cfg_.t);
        auto table = simplex_preservation_table(p_max, ts, cfg_.seed, resolve_budget(cfg_));
        emit(cfg_.format == Format::csv ? simplex_table_csv(table) : simplex_table_json(table));
        return table.all_agree() ? kOk : kViolation;
    }

    CliConfig cfg_;
    std::ostream& out_;
    std::ostream& err_;
};

/// Parses argv (argv[0] is the program name) and runs one command.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Exact finite metric space toolkit: Hausdorff hyperspaces and Gromov-Hausdorff distances", "mslab"};
    app.require_subcommand(1);
    CliConfig cfg;
    std::string format = "json";

    auto space_flags = [&](CLI::App* sub) {
        sub->add_option("--input", cfg.input, "Space file");
        sub->add_option("--a", cfg.a, "First space file");
        sub->add_option("--b", cfg.b, "Second space file");
        sub->add_option("--z", cfg.z, "Ambient space file");
        sub->add_option("--x", cfg.x_list, "Comma-separated zero-based indices");
        sub->add_option("--y", cfg.y_list, "Comma-separated zero-based indices");
        sub->add_flag("--allow-pseudometric", cfg.allow_pseudometric, "Accept zero distances between distinct points");
    };
    auto param_flags = [&](CLI::App* sub) {
        sub->add_option("--t", cfg.t, "Simplex scale (integer or p/q; a list for table-simplex)");
        sub->add_option("--s", cfg.s, "Second simplex scale");
        sub->add_option("--p", cfg.p, "Simplex size (p_max for table-simplex)");
        sub->add_option("--q", cfg.q, "Second simplex size");
        sub->add_option("--m", cfg.m, "Simplex size against a finite space");
        sub->add_option("--delta", cfg.delta, "Connectivity scale");
        sub->add_flag("--verify", cfg.verify, "Cross-check against the exact solver");
    };
    auto run_flags = [&](CLI::App* sub) {
        sub->add_option("--seed", cfg.seed, "Random seed (default 1)");
        sub->add_flag("--random-seed", cfg.random_seed, "Draw the seed from system entropy");
        sub->add_option("--count", cfg.count, "Number of samples");
        sub->add_option("--max-n", cfg.max_n, "Largest space size in sweeps");
        sub->add_option("--max-entry", cfg.max_entry, "Largest random integer distance");
        sub->add_option("--n", cfg.n, "Space size");
        sub->add_option("--node-budget", cfg.node_budget, "Solver node budget (env MSLAB_NODE_BUDGET)");
        sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
        sub->add_flag("--inject-fault", cfg.inject_fault, "Test hook: corrupt one side of a check")->group("");
    };

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"validate", "Check a space file against the metric axioms"},
        {"gen", "Generate a random metric space"},
        {"diam", "Diameter and minimal distance"},
        {"hausdorff", "Hausdorff distance between two subsets"},
        {"gh", "Exact Gromov-Hausdorff distance with witness"},
        {"hyperspace", "Hausdorff hyperspace of a space"},
        {"closed-form", "Closed-form Gromov-Hausdorff distances to simplices"},
        {"verify-embedding", "Check |H(X)H(Y)| = |XY| inside H(Z)"},
        {"verify-gamma", "Check the nearest-point map identities"},
        {"sweep-nonexpansion", "d_GH(H(X),H(Y)) <= d_GH(X,Y) on random pairs"},
        {"probe-isometry", "Gap statistics on general-position pairs"},
        {"table-simplex", "Simplex distance preservation table"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        space_flags(sub);
        param_flags(sub);
        run_flags(sub);
        sub->add_option("--out", cfg.out, "Write output to PATH instead of stdout");
        sub->add_option("--name", cfg.name, "Name stored in generated space files");
        sub->add_flag("--general-position", cfg.general_position, "gen: sample a space in general position");
        sub->callback([&cfg, name = name] { cfg.command = name; });
    }

    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kUsage;
    }
    cfg.format = format == "csv" ? Format::csv : Format::json;

    try {
        return Runner(std::move(cfg), out, err).run();
    } catch (const Error& e) {
        err << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
}

} // namespace mslab::cli

#endif // MSLAB_TOOLS_CLI_HPP
