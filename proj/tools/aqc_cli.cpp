// aqc: command-line front end.
// Exit codes: 0 success, 1 verification failure, 2 usage or input error, 3 budget exhausted.

#include <aqc/bfs.hpp>
#include <aqc/classify.hpp>
#include <aqc/cosetgraph.hpp>
#include <aqc/equiv.hpp>
#include <aqc/graph.hpp>
#include <aqc/io.hpp>
#include <aqc/macwilliams.hpp>
#include <aqc/shell.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>

using namespace aqc;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    int threads = 1;
    std::uint64_t budget = 0; // 0: per-command default
    std::string seed_order = "key";
    bool reverse() const { return seed_order == "reverse"; }
    std::uint64_t or_default(std::uint64_t d) const { return budget ? budget : d; }
};

Metric parse_metric(const std::string& s) {
    if (s == "doob") return Metric::Doob;
    if (s == "hamming") return Metric::Hamming;
    throw UsageError("unknown metric '" + s + "' (expected hamming or doob)");
}

std::vector<int> parse_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw UsageError("expected a comma-separated integer list, got '" + s + "'");
        }
    }
    return out;
}

std::string type_str(const Code& c) {
    const auto t = c.type();
    return std::to_string(t.delta) + "." + std::to_string(t.gamma);
}

std::string default_data_dir() {
    if (const char* e = std::getenv("AQC_DATA")) return e;
    return AQC_DATA_DIR;
}

std::vector<Code> codes_of(const std::string& path) {
    std::vector<Code> out;
    for (auto& r : load_codes(path)) out.push_back(r.code());
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Additive quaternary codes: weights, duality, equivalence, coset graphs and classification"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    if (const char* t = std::getenv("AQC_THREADS")) g.threads = std::max(1, std::atoi(t));
    app.add_option("--threads", g.threads, "Worker threads for classification")->check(CLI::PositiveNumber);
    app.add_option("--budget", g.budget, "Size budget (codewords, cosets, ambient vertices or search steps)");
    app.add_option("--seed-order", g.seed_order, "Order in which a level's classes are extended")
        ->check(CLI::IsMember({"key", "reverse"}));

    std::string file, file2, metric = "doob", form = "th", wd_text, export_path, target, weights = "6,8", manifest;
    int n = 0, d = 3, m = 0, np = 0, nd = 0, n_min = 0;
    std::uint64_t size = 0, max_size = 64;
    bool srg = false, csv = false, use_dual = false, fresh = false;
    std::string data_dir = default_data_dir();

    auto* weights_cmd = app.add_subcommand("weights", "Weight distribution of each code in a file");
    weights_cmd->add_option("file", file)->required();
    weights_cmd->add_option("--metric", metric, "hamming or doob");

    auto* dual_cmd = app.add_subcommand("dual", "Dual code");
    dual_cmd->add_option("file", file)->required();
    dual_cmd->add_option("--form", form, "th (trace-Hermitian) or doob")->check(CLI::IsMember({"th", "doob"}));

    auto* mw_cmd = app.add_subcommand("macwilliams", "Dual Hamming distribution from a code or a distribution");
    mw_cmd->add_option("file", file);
    mw_cmd->add_option("--wd", wd_text, "Distribution as w:count,w:count");
    mw_cmd->add_option("-n", n, "Length");
    mw_cmd->add_option("--size", size, "Code size");

    auto* equiv_cmd = app.add_subcommand("equiv", "Decide monomial equivalence of two codes");
    equiv_cmd->add_option("a", file)->required();
    equiv_cmd->add_option("b", file2)->required();

    auto* cg_cmd = app.add_subcommand("coset-graph", "Coset graph of a code");
    cg_cmd->add_option("file", file)->required();
    cg_cmd->add_flag("--srg", srg, "Report strongly regular parameters");
    cg_cmd->add_option("--export", export_path, "Write the adjacency lists to a file");
    cg_cmd->add_flag("--dual", use_dual, "Use the Doob dual of the code");

    auto* ia_cmd = app.add_subcommand("intersection-array", "Complete regularity by BFS over the ambient");
    ia_cmd->add_option("file", file)->required();
    ia_cmd->add_flag("--dual", use_dual, "Use the Doob dual of the code");

    auto* ch_cmd = app.add_subcommand("classify-hamming", "Classify additive (n, 2^k, >= d) codes over GF(4)");
    ch_cmd->add_option("-d", d, "Minimum distance")->required();
    ch_cmd->add_option("-n", n, "Largest length")->required();
    ch_cmd->add_option("--n-min", n_min, "Smallest length (default d)");
    ch_cmd->add_option("--target", target, "N,K: prune codes that cannot reach length N and dimension K");
    ch_cmd->add_flag("--csv", csv, "CSV output");

    auto* cd_cmd = app.add_subcommand("classify-doob", "Classify codes in D(m, n'+n'') with a weight whitelist");
    cd_cmd->add_option("-m", m, "Shrikhande factors")->required();
    cd_cmd->add_option("--nprime", np, "Z2^2 coordinates")->required();
    cd_cmd->add_option("--ndouble", nd, "Z4 coordinates")->required();
    cd_cmd->add_option("--weights", weights, "Allowed nonzero weights");
    cd_cmd->add_option("--max-size", max_size, "Stop at this size (0: run to exhaustion)");
    cd_cmd->add_option("--export", export_path, "Write the class representatives to a file");

    auto* l11_cmd = app.add_subcommand("lengthen11", "Lengthen the D(4,1+0) size-64 codes to diameter 11");

    auto* l12_cmd = app.add_subcommand("lift12", "Lifting report for the (6, 2^6, 3) and (6, 2^7, 3) codes");
    l12_cmd->add_option("--data", data_dir, "Data directory");
    l12_cmd->add_flag("--fresh", fresh, "Classify the codes instead of reading the corpus");

    auto* dd_cmd = app.add_subcommand("dodecacode", "Search for the dodecacode and check its puncturing");

    auto* vc_cmd = app.add_subcommand("verify-corpus", "Verify a corpus manifest");
    vc_cmd->add_option("manifest", manifest)->required();
    vc_cmd->add_flag("--fresh", fresh, "Also compare against a fresh classification");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        auto& out = std::cout;
        if (*weights_cmd) {
            const Metric mt = parse_metric(metric);
            const auto recs = load_codes(file);
            for (auto& r : recs) {
                if (recs.size() > 1) out << (r.name.empty() ? "-" : r.name) << " ";
                out << format_distribution(r.code().weight_distribution(mt)) << "\n";
            }
            return 0;
        }
        if (*dual_cmd) {
            const Code c = load_code(file);
            out << render_code(dual(c, form == "th" ? Form::TraceHermitian : Form::Doob));
            return 0;
        }
        if (*mw_cmd) {
            WeightDistribution wd;
            if (!file.empty()) {
                if (!wd_text.empty()) throw UsageError("macwilliams: give a file or --wd, not both");
                const Code c = load_code(file);
                wd = c.weight_distribution(Metric::Hamming);
                n = c.space().length();
                size = c.size();
            } else {
                if (wd_text.empty() || n <= 0 || size == 0) throw UsageError("macwilliams: --wd needs -n and --size");
                try {
                    wd = parse_distribution(wd_text, n);
                } catch (const std::invalid_argument& e) {
                    throw UsageError(e.what());
                }
            }
            const auto b = macwilliams(wd, n, size);
            for (std::size_t i = 0; i < b.size(); ++i) out << (i ? " " : "") << i << ":" << b[i];
            out << "\n";
            return 0;
        }
        if (*equiv_cmd) {
            out << (equivalent(load_code(file), load_code(file2)) ? "equivalent" : "inequivalent") << "\n";
            return 0;
        }
        if (*cg_cmd) {
            Code c = load_code(file);
            if (use_dual) c = dual(c, Form::Doob);
            const Graph gr = coset_graph(c, Metric::Doob, g.or_default(kDefaultCosetBudget));
            out << "vertices " << gr.order() << " edges " << gr.edge_count() << "\n";
            if (srg) {
                const auto p = srg_params(gr);
                out << (p ? "srg " + p->str() : std::string("not strongly regular")) << "\n";
            }
            if (!export_path.empty()) {
                std::ofstream f(export_path);
                if (!f) throw UsageError("cannot write " + export_path);
                f << gr.adjacency_text();
            }
            return 0;
        }
        if (*ia_cmd) {
            Code c = load_code(file);
            if (use_dual) c = dual(c, Form::Doob);
            const auto r = intersection_array(c, Metric::Doob, g.or_default(kDefaultAmbientBudget));
            if (!r.regular) {
                out << "not completely regular: " << r.reason << "\n";
                return 1;
            }
            out << r.array.str() << "\n";
            return 0;
        }
        if (*ch_cmd) {
            HammingConfig cfg;
            cfg.d = d;
            cfg.n_min = n_min;
            cfg.n_max = n;
            cfg.threads = g.threads;
            cfg.reverse_seeds = g.reverse();
            if (!target.empty()) {
                const auto t = parse_list(target);
                if (t.size() != 2) throw UsageError("--target expects N,K");
                cfg.target = std::make_pair(t[0], t[1]);
            }
            try {
                out << emit_table(classify_hamming(cfg).table, csv);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            return 0;
        }
        if (*cd_cmd) {
            TwoWeightConfig cfg;
            cfg.weights = parse_list(weights);
            if (max_size && std::popcount(max_size) != 1) throw UsageError("--max-size must be a power of 2");
            cfg.max_log2_size = max_size ? std::countr_zero(max_size) : 0;
            cfg.threads = g.threads;
            cfg.reverse_seeds = g.reverse();
            const Shape shape{m, np, nd};
            const auto levels = classify_doob_two_weight(shape, cfg);
            std::ofstream f;
            if (!export_path.empty()) {
                f.open(export_path);
                if (!f) throw UsageError("cannot write " + export_path);
            }
            out << "ambient " << shape.str() << "\n";
            for (auto& lvl : levels) {
                if (lvl.log2_size == 0) continue;
                out << "size " << (std::uint64_t(1) << lvl.log2_size) << ": " << lvl.classes.size() << " classes";
                for (auto& [t, list] : lvl.by_type()) out << ", type " << t.first << "." << t.second << ": " << list.size();
                out << "\n";
                if (f.is_open())
                    for (std::size_t i = 0; i < lvl.classes.size(); ++i) {
                        const Code& c = lvl.classes[i].code;
                        f << render_code(c, "s" + std::to_string(c.size()) + "-t" + type_str(c) + "-" + std::to_string(i + 1)) << "\n";
                    }
            }
            return 0;
        }
        if (*l11_cmd) {
            TwoWeightConfig cfg;
            cfg.threads = g.threads;
            cfg.reverse_seeds = g.reverse();
            std::set<Shape> with64;
            std::vector<Code> seeds;
            for (const Shape& s : diameter9_ambients()) {
                const auto levels = classify_doob_two_weight(s, cfg);
                if (levels.back().log2_size < 6) continue;
                with64.insert(s);
                if (s == Shape{4, 1, 0})
                    for (auto& c : levels.back().classes) seeds.push_back(c.code);
            }
            const auto rep = lengthen_diameter11(seeds, with64, g.threads);
            out << "candidates";
            for (auto& s : rep.candidates) out << " " << s.str();
            out << "\nseeds " << rep.lengthening.seeds.size() << " of size " << (std::uint64_t(1) << rep.lengthening.seed_log2_size) << "\n";
            for (auto& [k, list] : rep.lengthening.by_log2_size) {
                out << "size " << (std::uint64_t(1) << k) << ": " << list.size() << " classes\n";
                for (auto& c : list) out << "  type " << type_str(c.code) << "  " << format_distribution(c.code.weight_distribution()) << "\n";
            }
            out << "largest size " << (std::uint64_t(1) << rep.lengthening.max_log2_size()) << "; size 1024 "
                << (rep.excludes(10) ? "excluded" : "NOT excluded") << "\n";
            return rep.excludes(10) ? 0 : 1;
        }
        if (*l12_cmd) {
            std::vector<Code> c6, c7;
            if (fresh) {
                HammingConfig cfg;
                cfg.d = 3;
                cfg.n_min = cfg.n_max = 6;
                cfg.threads = g.threads;
                cfg.reverse_seeds = g.reverse();
                const auto res = classify_hamming(cfg);
                for (auto& c : res.classes.at({6, 6})) c6.push_back(c.code);
                for (auto& c : res.classes.at({6, 7})) c7.push_back(c.code);
            } else {
                const std::filesystem::path dir(data_dir);
                c6 = codes_of((dir / "corpus/appendix_b/dim6.codes").string());
                c7 = codes_of((dir / "corpus/appendix_b/dim7.codes").string());
            }
            std::vector<std::vector<Word>> printed;
            std::vector<Code> printed_codes;
            for (const char* name : {"hexacode", "liftable6-a"}) {
                const auto rec = parse_code(read_file((std::filesystem::path(data_dir) / "codes" / (std::string(name) + ".code")).string()));
                printed.push_back(rec.rows2);
                printed_codes.push_back(rec.code());
            }
            const auto rep = lift_diameter12(c6, c7, printed);
            out << "dimension 6: " << c6.size() << " codes, " << rep.all_rows_liftable.size() << " with every codeword liftable\n";
            for (std::size_t i = 0; i < rep.all_rows_liftable.size(); ++i) {
                const Code& c = c6[rep.all_rows_liftable[i]];
                out << "  code " << rep.all_rows_liftable[i] + 1 << ": d=" << rep.min_distance[i];
                if (equivalent(c, printed_codes[0])) out << ", equivalent to the hexacode";
                if (equivalent(c, printed_codes[1])) out << ", equivalent to liftable6-a";
                out << "\n";
            }
            const char* names[] = {"hexacode", "liftable6-a"};
            for (std::size_t i = 0; i < rep.first_rows_stages.size(); ++i) {
                out << "  " << names[i] << " first 3 rows, codes per stage:";
                for (auto s : rep.first_rows_stages[i]) out << " " << s;
                out << "\n";
            }
            out << "dimension 7: " << c7.size() << " codes, liftable codewords:";
            for (int x : rep.liftable_counts) out << " " << x;
            out << "\n";
            const bool ok = rep.joint_lifting_fails() && rep.counts_below_threshold();
            out << "all counts below " << Diameter12Report::threshold << ": " << (rep.counts_below_threshold() ? "yes" : "no")
                << "; joint lifting fails: " << (rep.joint_lifting_fails() ? "yes" : "no") << "\n";
            return ok ? 0 : 1;
        }
        if (*dd_cmd) {
            DodecacodeSearch cfg;
            if (g.budget) cfg.stage1_budget = cfg.stage2_budget = g.budget;
            const auto res = search_dodecacode(cfg);
            out << "seeds " << res.seeds << ", self-orthogonal " << res.orthogonal_seeds << ", pairs " << res.pairs << "\n";
            if (!res.code) {
                out << "not found\n";
                return 3;
            }
            const Code& c = *res.code;
            const Space& sp = c.space();
            out << "found at stage " << res.stage << ", seed " << sp.str(res.seed) << "\n" << render_code(c, "dodecacode");
            const Code p = puncture(c, 0);
            const auto pd = dual(p, Form::TraceHermitian);
            out << "cyclic " << is_cyclic(c) << ", self-dual " << is_self_dual(c, Form::TraceHermitian) << ", d "
                << c.min_distance(Metric::Hamming) << "\n";
            out << "punctured: size 2^" << p.log2_size() << ", d " << p.min_distance(Metric::Hamming) << ", F4-linear "
                << is_f4_linear(p) << "\n";
            out << "punctured dual: " << format_distribution(pd.weight_distribution(Metric::Hamming)) << "\n";
            const bool ok = is_cyclic(c) && is_self_dual(c, Form::TraceHermitian) && c.min_distance(Metric::Hamming) == 6 &&
                            p.log2_size() == 12 && p.min_distance(Metric::Hamming) == 5 && !is_f4_linear(p) &&
                            pd.weight_distribution(Metric::Hamming) == WeightDistribution{1, 0, 0, 0, 0, 0, 198, 0, 495, 0, 330, 0};
            return ok ? 0 : 1;
        }
        if (*vc_cmd) {
            VerifyOptions opt;
            opt.fresh = fresh;
            opt.threads = g.threads;
            const auto rep = verify_corpus(load_manifest(manifest), opt);
            out << "files " << rep.files << ", codes " << rep.codes << ", buckets " << rep.buckets.size() << ", violations "
                << rep.violations.size() << (rep.fresh_checked ? ", fresh classification compared" : "") << "\n";
            for (auto& v : rep.violations) out << "violation: " << v.str() << "\n";
            return rep.ok() ? 0 : 1;
        }
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return 3;
    } catch (const UsageError& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
