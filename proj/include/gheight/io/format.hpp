#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gheight/degen/degen.hpp"
#include "gheight/linalg/matrix.hpp"
#include "gheight/logdr/logform.hpp"
#include "gheight/series/multiseries.hpp"
#include "gheight/series/ops.hpp"

// Text formats. Every file starts with a header line
//   <kind> key=value ...
// followed by term lines "e1 e2 ... : coeff". Blank lines and everything
// after '#' are ignored. Number field coefficients are written as their
// power-basis coordinates "c0,c1,...".

namespace gheight::io {

inline std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string t;
    while (in >> t) out.push_back(t);
    return out;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
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

inline int parse_int(const std::string& s, const std::string& what) {
    try {
        size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size() || v < -1000000000L || v > 1000000000L) throw std::invalid_argument(s);
        return static_cast<int>(v);
    } catch (const std::exception&) {
        throw InputError(what + ": not an integer: '" + s + "'");
    }
}

// Source of significant lines with line numbers for error messages.
class Reader {
public:
    Reader(std::istream& in, std::string name) : name_(std::move(name)) {
        std::string line;
        int n = 0;
        while (std::getline(in, line)) {
            ++n;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (!line.empty()) lines_.push_back({n, line});
        }
    }
    static Reader from_file(const std::string& path) {
        std::ifstream f(path);
        if (!f) throw InputError("cannot open '" + path + "'");
        return Reader(f, path);
    }
    static Reader from_string(const std::string& text, std::string name = "<string>") {
        std::istringstream in(text);
        return Reader(in, std::move(name));
    }

    bool done() const { return pos_ >= lines_.size(); }
    const std::string& peek() const { return lines_.at(pos_).second; }
    std::string next() {
        if (done()) throw error("unexpected end of input");
        return lines_[pos_++].second;
    }
    InputError error(const std::string& msg) const {
        int line = pos_ == 0 ? 0 : lines_[std::min(pos_, lines_.size()) - 1].first;
        return InputError(name_ + ":" + std::to_string(line) + ": " + msg);
    }
    const std::string& name() const { return name_; }

private:
    std::string name_;
    std::vector<std::pair<int, std::string>> lines_;
    size_t pos_ = 0;
};

struct Header {
    std::string kind;
    std::map<std::string, std::string> kv;

    bool has(const std::string& k) const { return kv.count(k) > 0; }
    const std::string& get(const std::string& k) const {
        auto it = kv.find(k);
        if (it == kv.end()) throw InputError(kind + " header: missing key '" + k + "'");
        return it->second;
    }
    int get_int(const std::string& k) const { return parse_int(get(k), kind + " header key '" + k + "'"); }
};

inline Header read_header(Reader& r, const std::string& kind, const std::set<std::string>& allowed) {
    auto tok = split_ws(r.next());
    if (tok.empty() || tok[0] != kind) throw r.error("expected a '" + kind + "' header");
    Header h{kind, {}};
    for (size_t i = 1; i < tok.size(); ++i) {
        auto eq = tok[i].find('=');
        if (eq == std::string::npos) throw r.error("header token '" + tok[i] + "' is not key=value");
        std::string k = tok[i].substr(0, eq), v = tok[i].substr(eq + 1);
        if (!allowed.count(k)) throw r.error("unknown header key '" + k + "' in " + kind + " header");
        if (h.kv.count(k)) throw r.error("duplicate header key '" + k + "'");
        h.kv[k] = v;
    }
    return h;
}

// Field declared by a header and/or the --field flag.
inline NumberField resolve_field(const Header& h, const std::optional<std::string>& flag) {
    std::optional<std::string> spec;
    if (h.has("field")) spec = h.get("field");
    if (flag) {
        if (spec && !(NumberField(parse_minpoly(*spec)) == NumberField(parse_minpoly(*flag))))
            throw InputError("field mismatch: file declares field=" + *spec + " but --field is " + *flag);
        if (!spec) spec = flag;
    }
    if (!spec || parse_minpoly(*spec).degree() == 1) {
        if (spec) {
            UPoly p = parse_minpoly(*spec);
            if (!(p == UPoly::x())) throw InputError("field: a degree one field must be written 0,1");
        }
        return NumberField();
    }
    return NumberField(parse_minpoly(*spec));
}

inline Rational parse_coeff(const RationalField&, const std::string& s) { return parse_rational(trim(s)); }
inline NumberFieldElement parse_coeff(const NumberField& K, std::string s) {
    s = trim(s);
    if (!s.empty() && s.front() == '[' && s.back() == ']') s = s.substr(1, s.size() - 2);
    auto parts = split(s, ',');
    if (static_cast<int>(parts.size()) > K.degree())
        throw InputError("coefficient '" + s + "' has more than " + std::to_string(K.degree()) + " coordinates");
    std::vector<Rational> c;
    for (const auto& p : parts) c.push_back(parse_rational(p));
    return K.element(std::move(c));
}

inline std::string coeff_text(const Rational& q) { return q.get_str(); }
inline std::string coeff_text(const NumberFieldElement& x) {
    if (x.is_zero()) return "0";
    return x.to_string();
}

// "e1 e2 ... : coeff"
template <CoefficientField F>
std::pair<Exponent, typename F::element_type> parse_term(Reader& r, const F& K, const std::string& line, int nvars) {
    auto colon = line.find(':');
    if (colon == std::string::npos) throw r.error("term line '" + line + "' has no ':'");
    auto tok = split_ws(line.substr(0, colon));
    if (static_cast<int>(tok.size()) != nvars)
        throw r.error("term has " + std::to_string(tok.size()) + " exponents, expected " + std::to_string(nvars));
    Exponent e;
    for (const auto& t : tok) {
        int v = parse_int(t, "exponent");
        if (v < 0) throw r.error("negative exponent");
        e.push_back(v);
    }
    try {
        return {e, parse_coeff(K, line.substr(colon + 1))};
    } catch (const InputError& ex) {
        throw r.error(ex.what());
    }
}

inline bool is_term_line(const std::string& line) { return line.find(':') != std::string::npos; }

template <CoefficientField F>
MultiPoly<F> read_poly_terms(Reader& r, const F& K, int nvars) {
    MultiPoly<F> p(K, nvars);
    while (!r.done() && is_term_line(r.peek())) {
        auto [e, c] = parse_term(r, K, r.next(), nvars);
        p.add_term(e, c);
    }
    return p;
}

template <CoefficientField F>
std::string poly_terms_text(const MultiPoly<F>& p) {
    std::string s;
    for (const auto& [e, c] : p.terms()) {
        for (size_t i = 0; i < e.size(); ++i) s += (i ? " " : "") + std::to_string(e[i]);
        s += " : " + coeff_text(c) + "\n";
    }
    return s;
}

// --- series -------------------------------------------------------------

// "series vars=n order=N [field=...]" or
// "rational vars=n [order=N] [field=...]" with "num" and "den" blocks.
template <CoefficientField F>
MultiSeries<F> read_series_body(Reader& r, const Header& h, const F& K, int order_override = -1) {
    int n = h.get_int("vars");
    if (n < 1) throw r.error("vars must be >= 1");
    if (h.kind == "series") {
        int N = h.get_int("order");
        if (N < 0) throw r.error("order must be >= 0");
        if (order_override > N)
            throw OrderError("series file has order " + std::to_string(N) + ", " + std::to_string(order_override) + " requested",
                             order_override);
        MultiSeries<F> s(K, n, N);
        while (!r.done() && is_term_line(r.peek())) {
            auto [e, c] = parse_term(r, K, r.next(), n);
            s.add_term(e, c);
        }
        return order_override >= 0 ? s.truncate(order_override) : s;
    }
    int N = order_override >= 0 ? order_override : (h.has("order") ? h.get_int("order") : -1);
    if (N < 0) throw r.error("rational function needs an order (header order= or --order)");
    if (r.done() || r.next() != "num") throw r.error("expected 'num' block");
    auto P = read_poly_terms(r, K, n);
    if (r.done() || r.next() != "den") throw r.error("expected 'den' block");
    auto Q = read_poly_terms(r, K, n);
    return expand_rational(P, Q, N);
}

template <CoefficientField F>
MultiSeries<F> read_series(Reader& r, const F& K, int order_override = -1) {
    const std::string kind = r.done() ? "" : split_ws(r.peek()).front();
    if (kind != "series" && kind != "rational") throw r.error("expected a 'series' or 'rational' header");
    auto h = read_header(r, kind, {"vars", "order", "field"});
    auto s = read_series_body(r, h, K, order_override);
    if (!r.done()) throw r.error("trailing content '" + r.peek() + "'");
    return s;
}

inline Header peek_header(const std::string& path) {
    auto r = Reader::from_file(path);
    if (r.done()) throw InputError(path + ": empty file");
    auto tok = split_ws(r.peek());
    Header h{tok[0], {}};
    for (size_t i = 1; i < tok.size(); ++i) {
        auto eq = tok[i].find('=');
        if (eq != std::string::npos) h.kv[tok[i].substr(0, eq)] = tok[i].substr(eq + 1);
    }
    return h;
}

inline std::string as_number_field_header(const RationalField&) { return "0,1"; }
inline std::string as_number_field_header(const NumberField& K) { return K.header(); }

template <CoefficientField F>
std::string series_text(const MultiSeries<F>& s) {
    std::string out = "series vars=" + std::to_string(s.nvars()) + " order=" + std::to_string(s.order()) +
                      " field=" + as_number_field_header(s.field()) + "\n";
    for (const auto& [e, c] : s.terms()) {
        for (size_t i = 0; i < e.size(); ++i) out += (i ? " " : "") + std::to_string(e[i]);
        out += " : " + coeff_text(c) + "\n";
    }
    return out;
}

template <CoefficientField F>
std::string uniseries_text(const UniSeries<F>& s) {
    std::string out = "series vars=1 order=" + std::to_string(s.order()) + " field=" + as_number_field_header(s.field()) + "\n";
    for (int n = 0; n <= s.order(); ++n)
        if (!is_zero(s.coeff(n))) out += std::to_string(n) + " : " + coeff_text(s.coeff(n)) + "\n";
    return out;
}

template <CoefficientField F>
UniSeries<F> to_uni(const MultiSeries<F>& s) {
    if (s.nvars() != 1) throw InputError("expected a univariate series, got vars=" + std::to_string(s.nvars()));
    UniSeries<F> u(s.field(), s.order());
    for (const auto& [e, c] : s.terms()) u.set(e[0], c);
    return u;
}

// --- forms --------------------------------------------------------------

// "form vars=nu mu=mu degree=r order=N [field=...]", lines "2,3 | e... : c"
// with "-" for the empty generator set.
template <CoefficientField F>
LogForm<F> read_form(Reader& r, const F& K) {
    auto h = read_header(r, "form", {"vars", "mu", "degree", "order", "field"});
    LogForm<F> w(K, h.get_int("vars"), h.get_int("mu"), h.get_int("degree"), h.get_int("order"));
    while (!r.done()) {
        std::string line = r.next();
        auto bar = line.find('|');
        if (bar == std::string::npos) throw r.error("form line '" + line + "' has no '|'");
        std::string gens = trim(line.substr(0, bar));
        GenSet I;
        if (gens != "-")
            for (const auto& g : split(gens, ',')) I.push_back(parse_int(g, "generator index"));
        auto [e, c] = parse_term(r, K, line.substr(bar + 1), w.nu());
        try {
            w.add_term(I, e, c);
        } catch (const InputError& ex) {
            throw r.error(ex.what());
        }
    }
    return w;
}

// --- germs --------------------------------------------------------------

// "germ ambient=sigma target=nu [field=...]" then blocks "g 1", "p 1", ...
template <CoefficientField F>
std::pair<std::vector<MultiPoly<F>>, std::vector<MultiPoly<F>>> read_germ(Reader& r, const F& K, int& sigma) {
    auto h = read_header(r, "germ", {"ambient", "target", "field"});
    sigma = h.get_int("ambient");
    int nu = h.get_int("target");
    if (sigma < 1 || nu < 1 || nu > sigma) throw r.error("need 1 <= target <= ambient");
    std::vector<std::optional<MultiPoly<F>>> g(static_cast<size_t>(nu)), p(static_cast<size_t>(sigma - nu));
    while (!r.done()) {
        auto tok = split_ws(r.next());
        if (tok.size() != 2 || (tok[0] != "g" && tok[0] != "p")) throw r.error("expected a 'g i' or 'p i' block header");
        auto& list = tok[0] == "g" ? g : p;
        int i = parse_int(tok[1], "component index");
        if (i < 1 || i > static_cast<int>(list.size())) throw r.error(tok[0] + " index " + tok[1] + " out of range");
        if (list[static_cast<size_t>(i - 1)]) throw r.error("duplicate block " + tok[0] + " " + tok[1]);
        list[static_cast<size_t>(i - 1)] = read_poly_terms(r, K, sigma);
    }
    std::vector<MultiPoly<F>> G, P;
    for (size_t i = 0; i < g.size(); ++i) {
        if (!g[i]) throw r.error("missing block g " + std::to_string(i + 1));
        G.push_back(*g[i]);
    }
    for (size_t i = 0; i < p.size(); ++i) {
        if (!p[i]) throw r.error("missing block p " + std::to_string(i + 1));
        P.push_back(*p[i]);
    }
    return {G, P};
}

// --- vectors of univariate series --------------------------------------

// "gvector order=N [field=...]" then "entry series" (lines "n : c") or
// "entry rational" (num/den blocks of univariate terms).
template <CoefficientField F>
std::vector<UniSeries<F>> read_gvector(Reader& r, const F& K) {
    auto h = read_header(r, "gvector", {"order", "field"});
    int N = h.get_int("order");
    if (N < 0) throw r.error("order must be >= 0");
    std::vector<UniSeries<F>> out;
    while (!r.done()) {
        auto tok = split_ws(r.next());
        if (tok.size() != 2 || tok[0] != "entry") throw r.error("expected 'entry series' or 'entry rational'");
        if (tok[1] == "series") {
            UniSeries<F> s(K, N);
            while (!r.done() && is_term_line(r.peek())) {
                auto [e, c] = parse_term(r, K, r.next(), 1);
                if (e[0] > N) throw r.error("term t^" + std::to_string(e[0]) + " beyond order " + std::to_string(N));
                s.set(e[0], s.coeff(e[0]) + c);
            }
            out.push_back(std::move(s));
        } else if (tok[1] == "rational") {
            if (r.done() || r.next() != "num") throw r.error("expected 'num' block");
            auto P = read_poly_terms(r, K, 1);
            if (r.done() || r.next() != "den") throw r.error("expected 'den' block");
            auto Q = read_poly_terms(r, K, 1);
            out.push_back(to_uni(expand_rational(P, Q, N)));
        } else {
            throw r.error("unknown entry kind '" + tok[1] + "'");
        }
    }
    if (out.empty()) throw r.error("gvector has no entries");
    return out;
}

// --- matrices and polynomials -------------------------------------------

// "matrix m=M [field=...]" then "i j : c", 1-based.
template <CoefficientField F>
Matrix<F> read_matrix(Reader& r, const F& K) {
    auto h = read_header(r, "matrix", {"m", "field"});
    int m = h.get_int("m");
    if (m < 1 || m > 12) throw r.error("matrix size must lie in [1, 12]");
    Matrix<F> A(K, static_cast<size_t>(m), static_cast<size_t>(m));
    std::set<std::pair<int, int>> seen;
    while (!r.done()) {
        auto [e, c] = parse_term(r, K, r.next(), 2);
        if (e[0] < 1 || e[0] > m || e[1] < 1 || e[1] > m) throw r.error("matrix index out of range");
        if (!seen.insert({e[0], e[1]}).second) throw r.error("duplicate matrix entry");
        A(static_cast<size_t>(e[0] - 1), static_cast<size_t>(e[1] - 1)) = c;
    }
    return A;
}

template <CoefficientField F>
std::string matrix_text(const Matrix<F>& A) {
    std::string out = "matrix m=" + std::to_string(A.rows()) + " field=" + as_number_field_header(A.field()) + "\n";
    for (size_t i = 0; i < A.rows(); ++i)
        for (size_t j = 0; j < A.cols(); ++j)
            if (!is_zero(A(i, j))) out += std::to_string(i + 1) + " " + std::to_string(j + 1) + " : " + coeff_text(A(i, j)) + "\n";
    return out;
}

// "poly vars=n [field=...]"
template <CoefficientField F>
MultiPoly<F> read_poly(Reader& r, const F& K) {
    auto h = read_header(r, "poly", {"vars", "field"});
    int n = h.get_int("vars");
    if (n < 1) throw r.error("vars must be >= 1");
    auto p = read_poly_terms(r, K, n);
    if (!r.done()) throw r.error("trailing content '" + r.peek() + "'");
    return p;
}

// --- degenerations -------------------------------------------------------

// Lines: "dimension w", "component LABEL [pg=G]", "meet A B ...".
inline DegenerationConfig read_degeneration(Reader& r) {
    DegenerationConfig cfg;
    bool any_meet = false;
    while (!r.done()) {
        auto tok = split_ws(r.next());
        try {
            if (tok[0] == "dimension") {
                if (tok.size() != 2) throw InputError("usage: dimension W");
                cfg.fiber_dimension = parse_int(tok[1], "dimension");
                if (cfg.fiber_dimension < 0) throw InputError("dimension must be >= 0");
            } else if (tok[0] == "component") {
                if (any_meet) throw InputError("components must precede meet lines");
                if (tok.size() < 2 || tok.size() > 3) throw InputError("usage: component LABEL [pg=G]");
                std::optional<int> pg;
                if (tok.size() == 3) {
                    if (tok[2].rfind("pg=", 0) != 0) throw InputError("unknown component attribute '" + tok[2] + "'");
                    pg = parse_int(tok[2].substr(3), "pg");
                }
                cfg.add_component(tok[1], pg);
            } else if (tok[0] == "meet") {
                any_meet = true;
                if (tok.size() < 3) throw InputError("meet needs at least two components");
                cfg.add_stratum(std::vector<std::string>(tok.begin() + 1, tok.end()));
            } else {
                throw InputError("unknown directive '" + tok[0] + "'");
            }
        } catch (const InputError& e) {
            throw r.error(e.what());
        }
    }
    if (cfg.components().empty()) throw r.error("no components");
    return cfg;
}

// --- pipeline bundle ----------------------------------------------------

// key = value lines; paths are relative to the bundle's directory.
inline std::map<std::string, std::string> read_bundle(Reader& r, const std::set<std::string>& allowed) {
    std::map<std::string, std::string> kv;
    while (!r.done()) {
        std::string line = r.next();
        auto eq = line.find('=');
        if (eq == std::string::npos) throw r.error("bundle line '" + line + "' is not key = value");
        std::string k = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
        if (!allowed.count(k)) throw r.error("unknown bundle key '" + k + "'");
        if (kv.count(k)) throw r.error("duplicate bundle key '" + k + "'");
        kv[k] = v;
    }
    return kv;
}

} // namespace gheight::io
