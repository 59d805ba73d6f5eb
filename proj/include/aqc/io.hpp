#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "code.hpp"

namespace aqc {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& source, int line, const std::string& msg)
        : std::runtime_error(source + ":" + std::to_string(line) + ": " + msg), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

struct CodeRecord {
    std::string name;
    const Space* space = nullptr;
    std::vector<Word> rows4, rows2; // as written
    std::vector<std::pair<std::string, std::string>> meta;
    int line = 0;

    Code code() const {
        Code c(*space);
        for (Word w : rows4) c.add(w);
        for (Word w : rows2) c.add(w);
        return c;
    }
    const std::string* get(const std::string& key) const {
        for (auto& [k, v] : meta)
            if (k == key) return &v;
        return nullptr;
    }
    std::vector<std::string> get_all(const std::string& key) const {
        std::vector<std::string> out;
        for (auto& [k, v] : meta)
            if (k == key) out.push_back(v);
        return out;
    }
};

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

inline std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string t; in >> t;) out.push_back(t);
    return out;
}

inline bool is_dash_line(const std::string& s) {
    return s.size() >= 3 && s.find_first_not_of('-') == std::string::npos;
}

inline int parse_int(const std::string& s, const std::string& src, int line) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos != s.size() || v < 0) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(src, line, "expected a nonnegative integer, got '" + s + "'");
    }
}

inline unsigned parse_gf4_token(const std::string& t, const std::string& src, int line) {
    if (t.size() == 1) {
        switch (t[0]) {
        case '0': return 0;
        case '1': return 1;
        case 'w': return 2;
        case 'v': return 3;
        }
    } else if (t.size() == 2 && (t[0] == '0' || t[0] == '1') && (t[1] == '0' || t[1] == '1')) {
        return unsigned((t[0] - '0') * 2 + (t[1] - '0'));
    }
    throw ParseError(src, line, "malformed GF(4) token '" + t + "'");
}

inline Word parse_row(const Space& sp, bool gf4Header, const std::string& text, const std::string& src, int line) {
    std::string s = text;
    for (char& ch : s)
        if (ch == '&') ch = ' ';
    std::vector<std::string> toks;
    for (auto& t : split_ws(s)) {
        std::string u = t;
        while (!u.empty() && (u.back() == '\\')) u.pop_back();
        std::string v;
        for (char ch : u)
            if (ch != '|') v += ch;
        if (!v.empty()) toks.push_back(v);
    }
    if (int(toks.size()) != sp.length())
        throw ParseError(src, line, "row has " + std::to_string(toks.size()) + " symbols, expected " +
                                        std::to_string(sp.length()));
    Word x = 0;
    for (int i = 0; i < sp.length(); ++i) {
        const std::string& t = toks[i];
        unsigned v = 0;
        if (gf4Header) {
            v = parse_gf4_token(t, src, line);
        } else {
            switch (sp.kind(i)) {
            case Kind::Quad:
                if (t.size() != 2 || t[0] < '0' || t[0] > '3' || t[1] < '0' || t[1] > '3')
                    throw ParseError(src, line, "malformed Quad token '" + t + "'");
                v = unsigned(t[0] - '0') | (unsigned(t[1] - '0') << 2);
                break;
            case Kind::Bi:
                if (t.size() != 2 || (t[0] != '0' && t[0] != '1') || (t[1] != '0' && t[1] != '1'))
                    throw ParseError(src, line, "malformed Bi token '" + t + "'");
                v = unsigned(t[0] - '0') * 2 + unsigned(t[1] - '0');
                break;
            case Kind::Single:
                if (t.size() != 1 || t[0] < '0' || t[0] > '3')
                    throw ParseError(src, line, "malformed Single token '" + t + "'");
                v = unsigned(t[0] - '0');
                break;
            }
        }
        x = sp.with_symbol(x, i, v);
    }
    return x;
}

} // namespace detail

// Parses one or more code blocks. A block is an optional "code NAME" line, a header
// ("shape m n' n''" or "gf4 n"), optional "key value" metadata lines, order-4 rows, a
// dash line, order-2 rows. Without a dash line the rows are taken as plain generators.
inline std::vector<CodeRecord> parse_codes(std::string_view text, const std::string& source = "<input>") {
    std::vector<CodeRecord> out;
    struct State {
        CodeRecord rec;
        bool header = false, gf4 = false, dashes = false, any = false, rows = false;
        std::vector<Word> pending; // rows seen before/without dashes
        std::vector<int> pendingLines;
    } st;

    auto finish = [&](int line) {
        if (!st.any) return;
        if (!st.header) throw ParseError(source, line, "code block without a shape header");
        if (st.dashes) {
            for (std::size_t i = 0; i < st.pending.size(); ++i)
                if (st.rec.space->order(st.pending[i]) != 4)
                    throw ParseError(source, st.pendingLines[i], "order mismatch: row above the dash line is not of order 4");
            st.rec.rows4 = st.pending;
        } else {
            st.rec.rows2.insert(st.rec.rows2.begin(), st.pending.begin(), st.pending.end());
        }
        out.push_back(std::move(st.rec));
        st = State{};
    };

    std::istringstream in{std::string(text)};
    std::string raw;
    int lineNo = 0;
    while (std::getline(in, raw)) {
        ++lineNo;
        const auto hash = raw.find('#');
        const std::string line = detail::trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const auto toks = detail::split_ws(line);
        const std::string& key = toks[0];
        if (key == "code") {
            finish(lineNo);
            st.any = true;
            st.rec.line = lineNo;
            st.rec.name = toks.size() > 1 ? detail::trim(line.substr(4)) : "";
            continue;
        }
        if (key == "shape" || key == "gf4") {
            if (st.header) finish(lineNo);
            if (!st.any) st.rec.line = lineNo;
            st.any = true;
            Shape s;
            if (key == "shape") {
                if (toks.size() != 4) throw ParseError(source, lineNo, "expected 'shape m n1 n2'");
                s = {detail::parse_int(toks[1], source, lineNo), detail::parse_int(toks[2], source, lineNo),
                     detail::parse_int(toks[3], source, lineNo)};
            } else {
                if (toks.size() != 2) throw ParseError(source, lineNo, "expected 'gf4 n'");
                s = Shape::gf4(detail::parse_int(toks[1], source, lineNo));
                st.gf4 = true;
            }
            try {
                st.rec.space = &Space::get(s);
            } catch (const std::exception& e) {
                throw ParseError(source, lineNo, e.what());
            }
            st.header = true;
            continue;
        }
        if (!st.header) throw ParseError(source, lineNo, "expected a shape header before '" + line + "'");
        if (detail::is_dash_line(line)) {
            if (st.dashes) throw ParseError(source, lineNo, "second dash line in one block");
            st.dashes = true;
            continue;
        }
        const bool alpha = std::isalpha(static_cast<unsigned char>(key[0])) &&
                           !(st.gf4 && key.size() == 1 && (key[0] == 'w' || key[0] == 'v'));
        if (alpha) {
            if (st.rows) throw ParseError(source, lineNo, "metadata line after generator rows");
            st.rec.meta.emplace_back(key, detail::trim(line.substr(key.size())));
            continue;
        }
        st.rows = true;
        const Word w = detail::parse_row(*st.rec.space, st.gf4, line, source, lineNo);
        if (st.dashes) {
            if (st.rec.space->order(w) == 4)
                throw ParseError(source, lineNo, "order mismatch: row below the dash line has order 4");
            st.rec.rows2.push_back(w);
        } else {
            st.pending.push_back(w);
            st.pendingLines.push_back(lineNo);
        }
    }
    finish(lineNo);
    return out;
}

inline CodeRecord parse_code(std::string_view text, const std::string& source = "<input>") {
    auto v = parse_codes(text, source);
    if (v.size() != 1) throw ParseError(source, 0, "expected exactly one code, found " + std::to_string(v.size()));
    return std::move(v[0]);
}

inline std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

inline std::vector<CodeRecord> load_codes(const std::string& path) { return parse_codes(read_file(path), path); }

inline Code load_code(const std::string& path) { return parse_code(read_file(path), path).code(); }

inline std::string render_code(const Code& c, const std::string& name = "") {
    const Space& sp = c.space();
    std::ostringstream os;
    if (!name.empty()) os << "code " << name << "\n";
    if (c.shape().is_gf4())
        os << "gf4 " << sp.length() << "\n";
    else
        os << "shape " << c.shape().m << " " << c.shape().n1 << " " << c.shape().n2 << "\n";
    const auto pr = c.presentation();
    for (Word w : pr.gens4) os << sp.str(w) << "\n";
    if (!c.shape().is_gf4()) os << "----\n";
    for (Word w : pr.gens2) os << sp.str(w) << "\n";
    return os.str();
}

inline std::string format_distribution(const WeightDistribution& wd) {
    std::string s;
    for (std::size_t i = 0; i < wd.size(); ++i)
        if (wd[i]) s += (s.empty() ? "" : " ") + std::to_string(i) + ":" + std::to_string(wd[i]);
    return s;
}

// "w:count,w:count" (zero counts may be omitted).
inline WeightDistribution parse_distribution(const std::string& text, int n) {
    WeightDistribution wd(n + 1, 0);
    std::string s = text;
    for (char& ch : s)
        if (ch == ',') ch = ' ';
    for (const auto& item : detail::split_ws(s)) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("malformed distribution entry '" + item + "'");
        const int w = std::stoi(item.substr(0, colon));
        if (w < 0 || w > n) throw std::invalid_argument("weight " + std::to_string(w) + " outside 0.." + std::to_string(n));
        wd[w] += std::stoull(item.substr(colon + 1));
    }
    return wd;
}

} // namespace aqc
