#include "exphull/config_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "exphull/errors.hpp"

namespace exphull {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

struct SectionedFile {
    // section name -> list of (line number, content)
    std::map<std::string, std::vector<std::pair<int, std::string>>> sections;
    std::vector<std::string> order;

    const std::vector<std::pair<int, std::string>>& at(const std::string& name) const {
        static const std::vector<std::pair<int, std::string>> empty;
        auto it = sections.find(name);
        return it == sections.end() ? empty : it->second;
    }
    bool has(const std::string& name) const { return sections.count(name) > 0; }
};

SectionedFile parse_sections(const std::string& text) {
    SectionedFile f;
    std::istringstream in(text);
    std::string line;
    std::string current;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[') {
            if (t.back() != ']') throw ParseError(lineno, "malformed section header");
            current = trim(t.substr(1, t.size() - 2));
            if (current.empty()) throw ParseError(lineno, "empty section name");
            if (!f.sections.count(current)) f.order.push_back(current);
            f.sections[current];
            continue;
        }
        if (current.empty()) throw ParseError(lineno, "content before any section");
        f.sections[current].push_back({lineno, t});
    }
    return f;
}

// key = value lines inside a section
std::map<std::string, std::pair<int, std::string>> key_values(
    const std::vector<std::pair<int, std::string>>& lines) {
    std::map<std::string, std::pair<int, std::string>> kv;
    for (const auto& [ln, content] : lines) {
        auto eq = content.find('=');
        if (eq == std::string::npos) throw ParseError(ln, "expected key = value");
        std::string key = trim(content.substr(0, eq));
        std::string value = trim(content.substr(eq + 1));
        if (kv.count(key)) throw ParseError(ln, "duplicate key " + key);
        kv[key] = {ln, value};
    }
    return kv;
}

// ---------------------------------------------------------------------------
// polynomial expression parser
// ---------------------------------------------------------------------------

struct PolyParser {
    const std::vector<std::string>& vars;
    const std::string& text;
    size_t pos = 0;
    int line;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line, msg); }

    void skip_ws() {
        while (pos < text.size() && isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool peek(char c) {
        skip_ws();
        return pos < text.size() && text[pos] == c;
    }
    bool eat(char c) {
        if (!peek(c)) return false;
        ++pos;
        return true;
    }

    LaurentPoly parse() {
        LaurentPoly e = expr();
        skip_ws();
        if (pos != text.size()) fail("unexpected trailing input '" + text.substr(pos) + "'");
        return e;
    }

    LaurentPoly expr() {
        LaurentPoly acc = eat('-') ? -term() : term();
        for (;;) {
            if (eat('+'))
                acc = acc + term();
            else if (eat('-'))
                acc = acc - term();
            else
                return acc;
        }
    }

    LaurentPoly term() {
        LaurentPoly acc = factor();
        for (;;) {
            if (eat('*')) {
                acc = acc * factor();
            } else if (eat('/')) {
                Rational d = rational_literal();
                if (d == 0) fail("division by zero");
                acc = acc.scale(Rational(1) / d);
            } else {
                return acc;
            }
        }
    }

    Rational rational_literal() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() && isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) fail("expected a numeric literal");
        return Rational(Integer(text.substr(start, pos - start)));
    }

    LaurentPoly factor() {
        LaurentPoly b = base();
        if (eat('^')) {
            long e = integer();
            return b.pow(e);
        }
        return b;
    }

    long integer() {
        skip_ws();
        bool paren = eat('(');
        skip_ws();
        bool neg = eat('-');
        skip_ws();
        size_t start = pos;
        while (pos < text.size() && isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) fail("expected an integer exponent");
        long v = std::stol(text.substr(start, pos - start));
        if (paren && !eat(')')) fail("expected ')'");
        return neg ? -v : v;
    }

    LaurentPoly base() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of expression");
        if (eat('(')) {
            LaurentPoly e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        char c = text[pos];
        if (isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos;
            while (pos < text.size() && isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            std::string num = text.substr(start, pos - start);
            skip_ws();
            if (eat('/')) {
                skip_ws();
                size_t dstart = pos;
                while (pos < text.size() && isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
                if (dstart == pos) fail("expected a denominator");
                std::string den = text.substr(dstart, pos - dstart);
                return LaurentPoly::constant(vars, make_rational(Integer(num), Integer(den)));
            }
            return LaurentPoly::constant(vars, Rational(Integer(num)));
        }
        if (isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos;
            while (pos < text.size() &&
                   (isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
                ++pos;
            std::string name = text.substr(start, pos - start);
            auto it = std::find(vars.begin(), vars.end(), name);
            if (it == vars.end()) fail("unknown variable '" + name + "'");
            return LaurentPoly::variable(vars, static_cast<int>(it - vars.begin()));
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

std::vector<Rational> parse_rational_list(const std::string& text, int line) {
    std::vector<Rational> out;
    for (const auto& part : split(text, ',')) {
        if (part.empty()) throw ParseError(line, "empty entry in rational list");
        out.push_back(parse_rational(part));
    }
    return out;
}

// linear combination of pair names over Q, e.g. "a1 + tau" or "2*a1 - a2/3"
std::vector<Rational> parse_combo(const GammaConfig& cfg, const std::string& text, int line) {
    std::vector<std::string> names;
    for (const auto& n : cfg.pair_names) names.push_back(n);
    // also accept the x_<name> spelling
    std::vector<std::string> xnames;
    for (const auto& n : cfg.pair_names) xnames.push_back("x_" + n);
    std::vector<std::string> all = names;
    all.insert(all.end(), xnames.begin(), xnames.end());
    PolyParser parser{all, text, 0, line};
    LaurentPoly p = parser.parse();
    int n = cfg.npairs();
    std::vector<Rational> row(n, Rational(0));
    for (const auto& [e, c] : p.terms()) {
        int which = -1;
        long deg = 0;
        for (size_t i = 0; i < all.size(); ++i) {
            if (e[i] == 0) continue;
            if (which >= 0 || e[i] != 1) throw ParseError(line, "combo must be linear");
            which = static_cast<int>(i);
            deg = e[i];
        }
        (void)deg;
        if (which < 0) throw ParseError(line, "combo must have no constant term");
        row[which % n] += c;
    }
    return row;
}

} // namespace

LaurentPoly parse_poly(const std::vector<std::string>& vars, const std::string& text, int line) {
    PolyParser parser{vars, text, 0, line};
    return parser.parse();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

GammaConfig parse_gamma_config(const std::string& text) {
    SectionedFile f = parse_sections(text);
    if (!f.has("pairs")) throw ParseError(0, "missing [pairs] section");
    std::vector<std::string> names;
    for (const auto& [ln, content] : f.at("pairs")) {
        for (const auto& name : split(content, ',')) {
            if (name.empty()) throw ParseError(ln, "empty pair name");
            if (std::find(names.begin(), names.end(), name) != names.end())
                throw ParseError(ln, "duplicate pair name " + name);
            names.push_back(name);
        }
    }
    if (names.empty()) throw ParseError(0, "no pairs declared");

    int base_len = 1;
    if (f.has("base")) {
        auto kv = key_values(f.at("base"));
        auto it = kv.find("count");
        if (it == kv.end()) throw ParseError(0, "[base] needs count = <n>");
        base_len = std::stoi(it->second.second);
    }

    std::vector<std::string> vars;
    for (const auto& n : names) vars.push_back("x_" + n);
    for (const auto& n : names) vars.push_back("y_" + n);
    std::vector<LaurentPoly> gens;
    for (const auto& [ln, content] : f.at("locus")) gens.push_back(parse_poly(vars, content, ln));

    std::vector<std::vector<Rational>> qrows;
    for (const auto& [ln, content] : f.at("qlinear")) {
        auto row = parse_rational_list(content, ln);
        if (row.size() != names.size())
            throw ParseError(ln, "qlinear row length must equal the pair count");
        qrows.push_back(row);
    }

    bool irreducible = false, permissive = false;
    if (f.has("flags")) {
        auto kv = key_values(f.at("flags"));
        for (const auto& [key, lv] : kv) {
            bool value = lv.second == "true" || lv.second == "1";
            if (key == "irreducible")
                irreducible = value;
            else if (key == "permissive_qlinear")
                permissive = value;
            else
                throw ParseError(lv.first, "unknown flag " + key);
        }
    }
    return make_config(names, base_len, gens,
                       qrows.empty() ? QMatrix(0, static_cast<int>(names.size()))
                                     : QMatrix::from_rows(qrows),
                       irreducible, permissive);
}

AVariety parse_variety(const std::string& text) {
    SectionedFile f = parse_sections(text);
    if (!f.has("variety")) throw ParseError(0, "missing [variety] section");
    auto kv = key_values(f.at("variety"));
    auto pit = kv.find("pairs");
    if (pit == kv.end()) throw ParseError(0, "[variety] needs pairs = <n>");
    int n = std::stoi(pit->second.second);
    if (n < 1) throw ParseError(pit->second.first, "pairs must be >= 1");
    std::vector<std::string> params;
    std::vector<bool> units;
    auto prmit = kv.find("params");
    if (prmit != kv.end() && !prmit->second.second.empty()) {
        for (auto name : split(prmit->second.second, ',')) {
            bool unit = !name.empty() && name.back() == '*';
            if (unit) name = trim(name.substr(0, name.size() - 1));
            if (name.empty() || name[0] == 'x' || name[0] == 'y' || name[0] == '_')
                throw ParseError(prmit->second.first, "bad parameter name '" + name + "'");
            params.push_back(name);
            units.push_back(unit);
        }
    }
    auto vars = variety_vars(n, params);
    std::vector<LaurentPoly> gens;
    for (const auto& [ln, content] : f.at("ideal")) gens.push_back(parse_poly(vars, content, ln));
    return make_variety(n, gens, params, units);
}

Ideal parse_torus_ideal(const std::string& text) {
    SectionedFile f = parse_sections(text);
    if (!f.has("torus")) throw ParseError(0, "missing [torus] section");
    auto kv = key_values(f.at("torus"));
    auto vit = kv.find("vars");
    if (vit == kv.end()) throw ParseError(0, "[torus] needs vars = <n>");
    int n = std::stoi(vit->second.second);
    if (n < 1) throw ParseError(vit->second.first, "vars must be >= 1");
    std::vector<std::string> vars;
    std::set<std::string> inverted;
    for (int i = 1; i <= n; ++i) {
        vars.push_back("y" + std::to_string(i));
        inverted.insert(vars.back());
    }
    std::vector<LaurentPoly> gens;
    for (const auto& [ln, content] : f.at("ideal")) gens.push_back(parse_poly(vars, content, ln));
    return Ideal(vars, gens, inverted);
}

FiniteRankGroup parse_group(const std::string& text) {
    SectionedFile f = parse_sections(text);
    if (!f.has("group")) throw ParseError(0, "missing [group] section");
    FiniteRankGroup grp;
    grp.depth = 1;
    int n = -1;
    for (const auto& [ln, content] : f.at("group")) {
        auto eq = content.find('=');
        if (eq == std::string::npos) throw ParseError(ln, "expected key = value");
        std::string key = trim(content.substr(0, eq));
        std::string value = trim(content.substr(eq + 1));
        if (key == "n") {
            n = std::stoi(value);
        } else if (key == "depth") {
            grp.depth = std::stoi(value);
            if (grp.depth < 1) throw ParseError(ln, "depth must be >= 1");
        } else if (key == "gen") {
            auto entries = parse_rational_list(value, ln);
            std::vector<GroupCoord> coords;
            for (const auto& q : entries) {
                if (q == 0) throw ParseError(ln, "group generators must be nonzero");
                coords.push_back(coord_from_rational(q));
            }
            grp.generators.push_back(coords);
        } else {
            throw ParseError(ln, "unknown key " + key);
        }
    }
    if (n < 1) throw ParseError(0, "[group] needs n = <dimension>");
    grp.n = n;
    for (const auto& g : grp.generators)
        if (static_cast<int>(g.size()) != n) throw ParseError(0, "generator arity mismatch");
    return grp;
}

FunctionalEquation parse_equation(const std::string& text) {
    SectionedFile f = parse_sections(text);
    if (!f.has("equation")) throw ParseError(0, "missing [equation] section");
    auto kv = key_values(f.at("equation"));
    auto need = [&](const std::string& key) -> std::pair<int, std::string> {
        auto it = kv.find(key);
        if (it == kv.end()) throw ParseError(0, "[equation] needs " + key + " = ...");
        return it->second;
    };
    int ny = std::stoi(need("torus_vars").second);
    if (ny < 1) throw ParseError(0, "torus_vars must be >= 1");
    std::vector<std::string> vars = {"X1"};
    for (int j = 0; j < ny; ++j) vars.push_back("Y" + std::to_string(j + 2));
    auto [pline, ptext] = need("p");
    LaurentPoly p = parse_poly(vars, ptext, pline);

    auto [nline, ntext] = need("N");
    // matrix syntax: [[a, b], [c, d]]
    std::string s = ntext;
    auto strip = [&](char open, char close) {
        s = trim(s);
        if (s.empty() || s.front() != open || s.back() != close)
            throw ParseError(nline, "matrix must look like [[..],[..]]");
        s = s.substr(1, s.size() - 2);
    };
    strip('[', ']');
    std::vector<std::vector<Rational>> rows;
    size_t pos = 0;
    while (pos < s.size()) {
        while (pos < s.size() && (isspace(static_cast<unsigned char>(s[pos])) || s[pos] == ','))
            ++pos;
        if (pos >= s.size()) break;
        if (s[pos] != '[') throw ParseError(nline, "expected '[' starting a matrix row");
        size_t end = s.find(']', pos);
        if (end == std::string::npos) throw ParseError(nline, "unterminated matrix row");
        rows.push_back(parse_rational_list(s.substr(pos + 1, end - pos - 1), nline));
        pos = end + 1;
    }
    if (static_cast<int>(rows.size()) != ny) throw ParseError(nline, "N must have n-1 rows");
    for (const auto& r : rows)
        if (static_cast<int>(r.size()) != ny) throw ParseError(nline, "N must be square");

    auto parse_scalar = [&](const std::string& v, int line) -> Scalar {
        std::string t = trim(v);
        if (t.empty()) throw ParseError(line, "empty scalar");
        if (isalpha(static_cast<unsigned char>(t[0]))) return Scalar(t);
        return Scalar(parse_rational(t));
    };
    auto [bline, btext] = need("beta");
    auto [xline, xtext] = need("xi");
    auto [gline, gtext] = need("gamma");
    auto [uline, utext] = need("u");
    std::vector<Scalar> gamma;
    for (const auto& part : split(gtext, ',')) gamma.push_back(parse_scalar(part, gline));
    if (static_cast<int>(gamma.size()) != ny) throw ParseError(gline, "one gamma per torus variable");
    auto u = parse_rational_list(utext, uline);
    if (static_cast<int>(u.size()) != ny) throw ParseError(uline, "one u entry per torus variable");
    return make_equation(p, QMatrix::from_rows(rows), gamma, parse_scalar(btext, bline),
                         parse_scalar(xtext, xline), u);
}

SubspaceSpec parse_subspace(const GammaConfig& cfg, const std::string& text) {
    std::string t = trim(text);
    QMatrix rows(0, cfg.npairs());
    bool add_kernel = false, add_base = false;
    // suffixes: +kernel, +base (any order)
    for (;;) {
        if (t.size() > 7 && t.substr(t.size() - 7) == "+kernel") {
            add_kernel = true;
            t = trim(t.substr(0, t.size() - 7));
        } else if (t.size() > 5 && t.substr(t.size() - 5) == "+base") {
            add_base = true;
            t = trim(t.substr(0, t.size() - 5));
        } else {
            break;
        }
    }
    if (t == "full") {
        rows = QMatrix::identity(cfg.npairs());
    } else if (t == "kernel") {
        rows = kernel_subspace(cfg).rows;
    } else if (t == "base") {
        rows = base_subspace(cfg).rows;
    } else if (t == "empty" || t.empty()) {
        rows = QMatrix(0, cfg.npairs());
    } else if (t.rfind("span(", 0) == 0 && t.back() == ')') {
        std::string inner = t.substr(5, t.size() - 6);
        std::vector<std::vector<Rational>> r;
        for (const auto& part : split(inner, ',')) {
            if (part.empty()) throw DomainError("empty combo in span(...)");
            r.push_back(parse_combo(cfg, part, 0));
        }
        rows = QMatrix::from_rows(r);
    } else {
        throw DomainError("bad subspace spec '" + text + "'");
    }
    if (add_kernel) rows = rows.stack(kernel_subspace(cfg).rows);
    if (add_base) rows = rows.stack(base_subspace(cfg).rows);
    // canonicalise: drop dependent rows
    return SubspaceSpec{rows.rref()};
}

QMatrix parse_point(const GammaConfig& cfg, const std::string& text) {
    std::vector<std::vector<Rational>> rows;
    for (const auto& part : split(text, ';')) {
        if (part.empty()) throw DomainError("empty point row");
        rows.push_back(parse_combo(cfg, part, 0));
    }
    return QMatrix::from_rows(rows);
}

} // namespace exphull
