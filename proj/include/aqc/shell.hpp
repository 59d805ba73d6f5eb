#pragma once

// Corpus manifests and their verification.
//
// Manifest lines:
//   predicate weights 6,8          nonzero Doob weights must lie in the list
//   predicate min-distance 3       minimum Doob distance at least 3
//   bucket file=F shape=m,n1,n2 size=S [type=delta,gamma] count=N
// A bucket without a type holds the codes of that size whose type has no bucket of its own.
// Paths are relative to the manifest's directory.

#include <aqc/classify/doob.hpp>
#include <aqc/classify/hamming.hpp>
#include <aqc/io.hpp>

#include <filesystem>
#include <optional>

namespace aqc {

struct ManifestBucket {
    std::string file;
    Shape shape;
    int log2_size = 0;
    std::optional<std::pair<int, int>> type;
    std::size_t count = 0;
    int line = 0;
};

struct ManifestSection {
    CosetPredicate predicate;
    std::string predicate_text;
    std::vector<ManifestBucket> buckets;
};

struct CorpusManifest {
    std::filesystem::path dir;
    std::vector<ManifestSection> sections;

    std::vector<std::string> files(const ManifestSection& s) const {
        std::vector<std::string> out;
        for (auto& b : s.buckets)
            if (std::find(out.begin(), out.end(), b.file) == out.end()) out.push_back(b.file);
        return out;
    }
};

namespace detail {

inline std::vector<int> parse_int_list(const std::string& s, const std::string& src, int line) {
    std::vector<int> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) out.push_back(parse_int(trim(item), src, line));
    return out;
}

} // namespace detail

inline CorpusManifest parse_manifest(std::string_view text, const std::filesystem::path& dir,
                                     const std::string& source = "<manifest>") {
    CorpusManifest m;
    m.dir = dir;
    std::istringstream in{std::string(text)};
    std::string raw;
    int lineNo = 0;
    while (std::getline(in, raw)) {
        ++lineNo;
        const auto hash = raw.find('#');
        const std::string line = detail::trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const auto toks = detail::split_ws(line);
        if (toks[0] == "predicate") {
            if (toks.size() != 3) throw ParseError(source, lineNo, "expected 'predicate weights|min-distance ARGS'");
            const auto args = detail::parse_int_list(toks[2], source, lineNo);
            ManifestSection s;
            if (toks[1] == "weights") {
                s.predicate = CosetPredicate::weight_set(args);
            } else if (toks[1] == "min-distance" && args.size() == 1) {
                s.predicate = CosetPredicate::min_distance(args[0]);
            } else {
                throw ParseError(source, lineNo, "unknown predicate '" + toks[1] + "'");
            }
            s.predicate_text = toks[1] + " " + toks[2];
            m.sections.push_back(std::move(s));
        } else if (toks[0] == "bucket") {
            if (m.sections.empty()) throw ParseError(source, lineNo, "bucket before any predicate");
            ManifestBucket b;
            b.line = lineNo;
            bool has_file = false, has_shape = false, has_size = false, has_count = false;
            for (std::size_t i = 1; i < toks.size(); ++i) {
                const auto eq = toks[i].find('=');
                if (eq == std::string::npos) throw ParseError(source, lineNo, "expected key=value, got '" + toks[i] + "'");
                const std::string k = toks[i].substr(0, eq), v = toks[i].substr(eq + 1);
                if (k == "file") {
                    b.file = v;
                    has_file = true;
                } else if (k == "shape") {
                    const auto s = detail::parse_int_list(v, source, lineNo);
                    if (s.size() != 3) throw ParseError(source, lineNo, "shape needs three numbers");
                    b.shape = {s[0], s[1], s[2]};
                    has_shape = true;
                } else if (k == "size") {
                    const int size = detail::parse_int(v, source, lineNo);
                    if (size < 1 || std::popcount(unsigned(size)) != 1) throw ParseError(source, lineNo, "size must be a power of 2");
                    b.log2_size = std::countr_zero(unsigned(size));
                    has_size = true;
                } else if (k == "type") {
                    const auto t = detail::parse_int_list(v, source, lineNo);
                    if (t.size() != 2) throw ParseError(source, lineNo, "type needs two numbers");
                    if (2 * t[0] + t[1] != b.log2_size && has_size)
                        throw ParseError(source, lineNo, "type does not match size");
                    b.type = std::make_pair(t[0], t[1]);
                } else if (k == "count") {
                    b.count = std::size_t(detail::parse_int(v, source, lineNo));
                    has_count = true;
                } else {
                    throw ParseError(source, lineNo, "unknown bucket field '" + k + "'");
                }
            }
            if (!has_file || !has_shape || !has_size || !has_count) throw ParseError(source, lineNo, "bucket needs file, shape, size, count");
            m.sections.back().buckets.push_back(std::move(b));
        } else {
            throw ParseError(source, lineNo, "unknown manifest line '" + toks[0] + "'");
        }
    }
    return m;
}

inline CorpusManifest load_manifest(const std::string& path) {
    return parse_manifest(read_file(path), std::filesystem::path(path).parent_path(), path);
}

struct Violation {
    std::string file, code, reason;
    std::string str() const { return file + (code.empty() ? "" : " [" + code + "]") + ": " + reason; }
};

struct BucketResult {
    const ManifestBucket* bucket = nullptr;
    std::size_t found = 0;
};

struct CorpusReport {
    std::size_t files = 0, codes = 0;
    std::vector<BucketResult> buckets;
    std::vector<Violation> violations;
    bool fresh_checked = false;

    bool ok() const { return violations.empty(); }
    const BucketResult* find(const Shape& s, int log2_size, std::optional<std::pair<int, int>> type) const {
        for (auto& b : buckets)
            if (b.bucket->shape == s && b.bucket->log2_size == log2_size && b.bucket->type == type) return &b;
        return nullptr;
    }
};

struct VerifyOptions {
    bool fresh = false; // rerun the classification and compare class sets bucket by bucket
    int threads = 1;
};

inline CorpusReport verify_corpus(const CorpusManifest& m, const VerifyOptions& opt = {}) {
    CorpusReport rep;
    for (auto& sec : m.sections) {
        std::map<const ManifestBucket*, std::map<std::string, std::string>> keys; // bucket -> key -> code name
        for (auto& b : sec.buckets) rep.buckets.push_back({&b, 0});
        auto bucket_for = [&](const Shape& s, int k, std::pair<int, int> t) -> const ManifestBucket* {
            const ManifestBucket* untyped = nullptr;
            for (auto& b : sec.buckets) {
                if (!(b.shape == s) || b.log2_size != k) continue;
                if (b.type == t) return &b;
                if (!b.type) untyped = &b;
            }
            return untyped;
        };
        for (auto& file : m.files(sec)) {
            ++rep.files;
            std::vector<CodeRecord> recs;
            try {
                recs = load_codes((m.dir / file).string());
            } catch (const std::exception& e) {
                rep.violations.push_back({file, "", e.what()});
                continue;
            }
            for (std::size_t i = 0; i < recs.size(); ++i) {
                ++rep.codes;
                const auto& rec = recs[i];
                const std::string name = rec.name.empty() ? "#" + std::to_string(i + 1) : rec.name;
                auto bad = [&](const std::string& why) { rep.violations.push_back({file, name, why}); };
                const Code c = rec.code();
                const auto t = c.type();
                if (auto* s = rec.get("size"); s && *s != std::to_string(c.size())) bad("labeled size " + *s + ", actual " + std::to_string(c.size()));
                if (auto* s = rec.get("type")) {
                    const auto toks = detail::split_ws(*s);
                    if (toks.size() != 2 || toks[0] != std::to_string(t.delta) || toks[1] != std::to_string(t.gamma))
                        bad("labeled type " + *s + ", actual " + std::to_string(t.delta) + " " + std::to_string(t.gamma));
                }
                int row_bits = 0;
                for (Word w : rec.rows4) row_bits += rec.space->order(w) == 4 ? 2 : 1;
                for (Word w : rec.rows2) row_bits += rec.space->order(w) == 4 ? 2 : 1;
                if (row_bits != c.log2_size()) bad("generator rows are dependent");
                if (!sec.predicate.holds(c)) bad("violates predicate " + sec.predicate_text + ", weights " + format_distribution(c.weight_distribution()));
                const ManifestBucket* b = bucket_for(c.shape(), c.log2_size(), {t.delta, t.gamma});
                if (!b || b->file != file) {
                    bad("no bucket for shape " + c.shape().str() + " size " + std::to_string(c.size()) + " type " +
                        std::to_string(t.delta) + "," + std::to_string(t.gamma) + " in this file");
                    continue;
                }
                const auto key = CodeClass::of(c).key;
                auto [it, fresh] = keys[b].emplace(key, name);
                if (!fresh) bad("equivalent to " + it->second);
                for (auto& br : rep.buckets)
                    if (br.bucket == b) ++br.found;
            }
        }
        for (auto& br : rep.buckets) {
            if (std::find_if(sec.buckets.begin(), sec.buckets.end(), [&](auto& b) { return &b == br.bucket; }) == sec.buckets.end()) continue;
            if (br.found != br.bucket->count)
                rep.violations.push_back({br.bucket->file, "", "bucket at line " + std::to_string(br.bucket->line) + " expects " +
                                                                  std::to_string(br.bucket->count) + " codes, found " + std::to_string(br.found)});
        }
        if (!opt.fresh) continue;
        rep.fresh_checked = true;
        std::set<Shape> shapes;
        for (auto& b : sec.buckets) shapes.insert(b.shape);
        for (const Shape& s : shapes) {
            // (log2 size, type) -> keys from a fresh run
            std::map<std::pair<int, std::pair<int, int>>, std::set<std::string>> found;
            if (sec.predicate.kind == CosetPredicate::Kind::WeightSet) {
                TwoWeightConfig cfg;
                cfg.weights.clear();
                for (int w = 0; w < 64; ++w)
                    if ((sec.predicate.weights >> w) & 1) cfg.weights.push_back(w);
                cfg.max_log2_size = 0;
                cfg.threads = opt.threads;
                for (auto& lvl : classify_doob_two_weight(s, cfg))
                    for (auto& cls : lvl.classes) {
                        const auto t = cls.code.type();
                        found[{lvl.log2_size, {t.delta, t.gamma}}].insert(cls.key);
                    }
            } else {
                if (!s.is_gf4()) throw std::invalid_argument("verify_corpus: fresh min-distance runs need a gf4 shape");
                HammingConfig cfg;
                cfg.d = sec.predicate.d;
                cfg.n_min = cfg.n_max = s.n1;
                cfg.threads = opt.threads;
                for (auto& [nk, list] : classify_hamming(cfg).classes)
                    for (auto& cls : list) {
                        const auto t = cls.code.type();
                        found[{nk.second, {t.delta, t.gamma}}].insert(cls.key);
                    }
            }
            // Buckets listed for this shape, with their corpus keys.
            std::map<const ManifestBucket*, std::set<std::string>> listed;
            for (auto& b : sec.buckets)
                if (b.shape == s) {
                    listed[&b];
                    for (auto& [k, name] : keys[&b]) listed[&b].insert(k);
                }
            std::map<const ManifestBucket*, std::set<std::string>> fresh_by_bucket;
            for (auto& [st, ks] : found) {
                const ManifestBucket* b = bucket_for(s, st.first, st.second);
                if (!b) {
                    // Sizes the manifest does not list at all are out of scope.
                    const bool size_listed = std::any_of(sec.buckets.begin(), sec.buckets.end(),
                                                         [&](auto& x) { return x.shape == s && x.log2_size == st.first; });
                    if (size_listed)
                        rep.violations.push_back({s.str(), "", "fresh run finds " + std::to_string(ks.size()) + " classes of size " +
                                                                   std::to_string(std::uint64_t(1) << st.first) + " type " +
                                                                   std::to_string(st.second.first) + "," + std::to_string(st.second.second) +
                                                                   " with no bucket"});
                    continue;
                }
                fresh_by_bucket[b].insert(ks.begin(), ks.end());
            }
            for (auto& [b, ks] : listed)
                if (fresh_by_bucket[b] != ks)
                    rep.violations.push_back({b->file, "", "bucket at line " + std::to_string(b->line) + ": fresh run finds " +
                                                              std::to_string(fresh_by_bucket[b].size()) + " classes, corpus has " +
                                                              std::to_string(ks.size()) + ", sets differ"});
        }
    }
    return rep;
}

// Aligned text or CSV grid of a class table.
inline std::string emit_table(const ClassTable& t, bool csv = false) { return t.text(csv); }

} // namespace aqc
