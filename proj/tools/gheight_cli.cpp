#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "gheight/degen/degen.hpp"
#include "gheight/etale/inversion.hpp"
#include "gheight/gfun/gfun.hpp"
#include "gheight/io/format.hpp"
#include "gheight/logdr/reduce.hpp"
#include "gheight/relations/relations.hpp"
#include "gheight/series/ops.hpp"

using namespace gheight;
namespace fs = std::filesystem;

namespace {

const char* kVersion = "0.1.0";

struct Options {
    std::optional<std::string> field;
    long precision = 128;
    unsigned long seed = 20240601;
    std::string output;
    int order = -1, mu = -1, degree = -1, xdegree = -1, window = -1, k = -1, d = -1, n = -1, genus = -1, step = 1;
    std::string input, place, places, xi;
};

std::string footer(const Options& o) {
    return "# gheight " + std::string(kVersion) + "; precision=" + std::to_string(o.precision) +
           "; normalization: |x|_v = |sigma_v x|^(n_v/d) at archimedean v, p^(-v_p(N_v x)/d) at finite v; natural logarithms\n";
}

template <class Fn>
void with_field(const NumberField& K, Fn&& fn) {
    if (K.is_rationals()) fn(RationalField{});
    else fn(K);
}

NumberField field_of(const std::string& path, const Options& o) { return io::resolve_field(io::peek_header(path), o.field); }

std::string tag_interval(const Options& o) { return "interval(precision=" + std::to_string(o.precision) + ")"; }
std::string tag_window(int w) { return "estimate(window=" + std::to_string(w) + ")"; }

std::vector<Place> parse_places(const std::string& list, const NumberField& K) {
    std::vector<Place> out;
    if (io::trim(list).empty()) return out;
    for (const auto& tok : io::split(list, ',')) {
        if (tok == "inf") {
            for (auto& v : archimedean_places(K)) out.push_back(v);
            continue;
        }
        Integer p;
        if (tok.empty() || p.set_str(tok, 10) != 0 || p < 2 || !is_prime(p))
            throw InputError("place '" + tok + "' is neither 'inf' nor a prime");
        for (auto& v : places_above(K, p)) out.push_back(v);
    }
    return out;
}

// --- subcommands --------------------------------------------------------

std::string run_diagonal(const Options& o) {
    if (o.mu < 1) throw InputError("diagonal: --mu must be >= 1");
    if (o.order < 0) throw InputError("diagonal: --order must be given and >= 0");
    std::string out;
    with_field(field_of(o.input, o), [&](const auto& K) {
        auto r = io::Reader::from_file(o.input);
        auto s = io::read_series(r, K, o.order);
        auto h = mu_diagonal(s, o.mu);
        out = "# diagonal mu=" + std::to_string(o.mu) + " input order=" + std::to_string(o.order) + " exact\n" + io::uniseries_text(h);
    });
    return out;
}

std::string run_reduce(const Options& o) {
    std::string out;
    with_field(field_of(o.input, o), [&](const auto& K) {
        auto r = io::Reader::from_file(o.input);
        auto w = io::read_form(r, K);
        auto red = relative_reduce_with_primitive(w, o.order);
        auto h = o.order >= 0 ? red.h.truncate(o.order) : red.h;
        out = "# relative reduction nu=" + std::to_string(w.nu()) + " mu=" + std::to_string(w.mu()) + " input order=" +
              std::to_string(w.order()) + " exact\n";
        out += "# primitive eta: " + std::string(red.eta ? "degree " + std::to_string(red.eta->degree()) : "none (mu = 1)") + "\n";
        out += io::uniseries_text(h);
    });
    return out;
}

std::string run_invert(const Options& o) {
    if (o.order < 1) throw InputError("invert: --order must be given and >= 1");
    std::string out;
    with_field(field_of(o.input, o), [&](const auto& K) {
        using F = std::decay_t<decltype(K)>;
        auto r = io::Reader::from_file(o.input);
        int sigma = 0;
        auto [g, p] = io::read_germ(r, K, sigma);
        EtaleGerm<F> germ(K, sigma, g, p);
        auto res = invert(germ, o.order);
        std::string primes;
        for (const auto& q : res.bad_primes) primes += (primes.empty() ? "" : ",") + q.get_str();
        out = "invert ambient=" + std::to_string(sigma) + " target=" + std::to_string(germ.nu()) + " order=" + std::to_string(res.order) + "\n";
        out += "bad_primes = {" + primes + "} exact\n";
        out += "scaling = " + res.scaling.get_str() + " exact\n";
        out += "s_scaling = " + res.s_scaling(germ.nu()).get_str() + " exact\n";
        out += "certified_order = " + std::to_string(res.certified_order()) + " exact\n";
        for (size_t i = 0; i < res.A.size(); ++i) {
            out += "# component " + std::to_string(i + 1) + " exact\n";
            out += io::series_text(res.A[i]);
        }
    });
    return out;
}

template <CoefficientField F>
GVector<F> load_gvector(const std::string& path, const F& K) {
    auto r = io::Reader::from_file(path);
    return GVector<F>(io::read_gvector(r, K));
}

std::string run_size(const Options& o) {
    std::string out;
    with_field(field_of(o.input, o), [&](const auto& K) {
        auto G = load_gvector(o.input, K);
        int N = o.order < 0 ? G.order() : o.order;
        if (N < 1 || N > G.order()) throw InputError("size: --order must lie in [1, " + std::to_string(G.order()) + "]");
        if (o.step < 1) throw InputError("size: --step must be >= 1");
        std::vector<int> ns;
        for (int n = o.step; n <= N; n += o.step) ns.push_back(n);
        if (ns.empty() || ns.back() != N) ns.push_back(N);
        auto seq = size_sequence(G, ns, o.precision);
        out = "size entries=" + std::to_string(G.size()) + " order=" + std::to_string(G.order()) + "\n";
        for (const auto& s : seq) {
            std::string fin;
            for (const auto& [p, e] : s.finite) fin += (fin.empty() ? "" : " ") + p.get_str() + "^" + e.get_str();
            out += "sigma_" + std::to_string(s.n) + " = " + s.value.mid_string(12) + " " + tag_interval(o) + " enclosure=" +
                   s.value.to_string(12) + " finite_exponents={" + fin + "} exact\n";
        }
        if (seq.size() >= 2) {
            auto t = size_heuristic(seq);
            std::ostringstream sl;
            sl.precision(6);
            sl << std::fixed << t.slope;
            out += "trend slope=" + sl.str() + " verdict=" + t.verdict + " " + tag_window(static_cast<int>(seq.size())) + "\n";
        }
    });
    return out;
}

std::string run_radius(const Options& o) {
    std::string out;
    NumberField KN = field_of(o.input, o);
    with_field(KN, [&](const auto& K) {
        auto G = load_gvector(o.input, K);
        int w = o.window < 0 ? std::min(G.order(), std::max(4, G.order() / 2)) : o.window;
        auto places = parse_places(o.place.empty() ? "inf" : o.place, KN);
        out = "radius entries=" + std::to_string(G.size()) + " order=" + std::to_string(G.order()) + " window=" + std::to_string(w) + "\n";
        for (const auto& v : places)
            for (int i = 0; i < G.size(); ++i)
                out += "place " + v.label() + " entry " + std::to_string(i + 1) + " radius = " + v_radius(G[i], v, w, o.precision).to_string() + "\n";
    });
    return out;
}

std::string relevance_line(const RelevanceEntry& e, int w, const Options& o) {
    std::string s = "place " + e.place + " |xi|_v = " + e.xi_abs.to_string() + " " +
                    (e.xi_abs.is_finite_place() || e.xi_abs.exact ? std::string("exact") : tag_interval(o)) +
                    " relevant = " + verdict_string(e.relevant) + " " + (e.estimate ? tag_window(w) : std::string("exact"));
    return s + "\n";
}

std::string run_relevant(const Options& o) {
    if (o.xi.empty()) throw InputError("relevant: --xi is required");
    std::string out;
    NumberField KN = field_of(o.input, o);
    with_field(KN, [&](const auto& K) {
        auto G = load_gvector(o.input, K);
        auto xi = io::parse_coeff(K, o.xi);
        int w = o.window < 0 ? std::min(G.order(), std::max(4, G.order() / 2)) : o.window;
        auto places = parse_places(o.places.empty() ? "inf" : o.places, KN);
        out = "relevant xi=" + io::coeff_text(xi) + " window=" + std::to_string(w) + "\n";
        for (const auto& e : relevance_report(xi, places, G, w, o.precision)) out += relevance_line(e, w, o);
    });
    return out;
}

std::string run_funrel(const Options& o) {
    if (o.degree < 0 || o.xdegree < 0) throw InputError("funrel: --degree and --xdegree are required");
    std::string out;
    with_field(field_of(o.input, o), [&](const auto& K) {
        auto G = load_gvector(o.input, K);
        int N = o.order < 0 ? G.order() : o.order;
        auto B = functional_relations(G, o.degree, o.xdegree, N);
        out = "funrel delta=" + std::to_string(o.degree) + " D=" + std::to_string(o.xdegree) + " order=" + std::to_string(B.order) +
              " unknowns=" + std::to_string(B.unknowns) + " equations=" + std::to_string(B.equations) + "\n";
        out += "basis_size = " + std::to_string(B.basis.size()) + " exact\n";
        auto names = relation_names(G.size());
        for (size_t i = 0; i < B.basis.size(); ++i) out += "relation " + std::to_string(i + 1) + " = " + B.basis[i].to_string(names) + "\n";
    });
    return out;
}

std::string run_minors(const Options& o) {
    std::string out;
    with_field(field_of(o.input, o), [&](const auto& K) {
        auto r = io::Reader::from_file(o.input);
        auto tau = io::read_matrix(r, K);
        int dmin = static_cast<int>(tau.minpoly().size()) - 1;
        if (o.k < 1 || o.k >= dmin)
            throw InputError("minors: k must satisfy 1 ≤ k < deg(minpoly) = " + std::to_string(dmin) + ", got k = " + std::to_string(o.k));
        auto minors = minor_relation(tau, o.k);
        int m = static_cast<int>(tau.rows());
        out = "minors m=" + std::to_string(m) + " k=" + std::to_string(o.k) + " deg(minpoly)=" + std::to_string(dmin) + "\n";
        auto names = dual_names(m);
        for (const auto& mi : minors) {
            std::string cols;
            for (int c : mi.columns) cols += (cols.empty() ? "" : ",") + std::to_string(c);
            out += "minor columns=" + cols + " : " + mi.poly.to_string(names) + " exact\n";
        }
        // nontriviality at a seeded random functional
        std::mt19937_64 rng(o.seed);
        std::uniform_int_distribution<int> dist(-1000, 1000);
        std::vector<typename std::decay_t<decltype(K)>::element_type> y;
        for (int i = 0; i < m; ++i) y.push_back(K.from_rational(Rational(dist(rng))));
        bool nonzero = false;
        for (const auto& mi : minors) nonzero |= !is_zero(mi.poly.evaluate(y));
        out += "generic_check seed=" + std::to_string(o.seed) + " nonzero=" + (nonzero ? "yes" : "no") + " exact\n";
    });
    return out;
}

std::string run_linfactors(const Options& o) {
    NumberField K = field_of(o.input, o);
    if (!K.is_rationals()) throw InputError("linfactors: the endomorphism matrix must be over Q");
    auto r = io::Reader::from_file(o.input);
    auto tau = io::read_matrix(r, RationalField{});
    auto res = linear_factor_relations(tau);
    int m = static_cast<int>(tau.rows());
    std::string out = "linfactors m=" + std::to_string(m) + "\n";
    for (const auto& f : res.forms) out += "form " + f.to_string() + " exact\n";
    out += "product = " + res.product.to_string(dual_names(m)) + " exact\n";
    return out;
}

std::string run_galprod(const Options& o) {
    std::string out;
    with_field(field_of(o.input, o), [&](const auto& K) {
        auto r = io::Reader::from_file(o.input);
        auto P = io::read_poly(r, K);
        auto N = galois_conjugate_product(P);
        out = "galprod vars=" + std::to_string(P.nvars()) + " field=" + io::as_number_field_header(K) + "\n";
        out += "product = " + N.to_string(dual_names(P.nvars())) + " exact\n";
        out += "# coefficients over Q\npoly vars=" + std::to_string(N.nvars()) + " field=0,1\n" + io::poly_terms_text(N);
    });
    return out;
}

std::string run_dualgraph(const Options& o) {
    auto r = io::Reader::from_file(o.input);
    auto cfg = io::read_degeneration(r);
    auto dual = dual_complex(cfg);
    const auto& S = dual.complex;
    std::string out = "dualgraph components=" + std::to_string(cfg.components().size()) + " strata=" + std::to_string(cfg.strata().size()) +
                      " fiber_dimension=" + std::to_string(cfg.fiber_dimension) + "\n";
    for (const auto& w : dual.warnings) out += "warning: " + w + "\n";
    out += "subdivided = " + std::string(dual.subdivided ? "yes" : "no") + "\n";
    out += "vertices = " + std::to_string(S.vertex_count()) + " exact\n";
    std::string fv;
    for (auto f : S.f_vector()) fv += (fv.empty() ? "" : ",") + std::to_string(f);
    out += "f_vector = " + fv + " exact\n";
    out += "euler_characteristic = " + std::to_string(euler_characteristic(S)) + " exact\n";
    for (int n = 0; n <= std::max(S.dimension(), cfg.fiber_dimension); ++n) {
        auto v = vanishing_cycle_count(cfg, n);
        out += "h^" + std::to_string(n) + " = " + std::to_string(v.count) + " exact" + (v.middle ? " middle" : " combinatorial only");
        if (v.middle) out += " hypothesis=" + std::string(v.hypothesis_satisfied ? "satisfied" : "not satisfied");
        out += "\n";
    }
    return out;
}

std::string run_arrangement(const Options& o) {
    auto r = generic_arrangement_count(o.d, o.n);
    std::string out = "arrangement d=" + std::to_string(o.d) + " n=" + std::to_string(o.n) + "\n";
    out += "count=" + std::to_string(r.count) + " hypothesis=" + (r.count >= 2 ? "satisfied" : "not satisfied") + " exact\n";
    out += "skeleton_betti=" + std::to_string(r.betti) + " agree=" + (r.agree ? "yes" : "no") + " exact\n";
    return out;
}

std::string run_stablecurve(const Options& o) {
    auto r = io::Reader::from_file(o.input);
    auto cfg = io::read_degeneration(r);
    auto c = curve_data(cfg);
    int g = o.genus >= 0 ? o.genus : c.g;
    auto rep = stable_curve_check(g, c.pg, c.delta, c.ell);
    auto v = vanishing_cycle_count(cfg, 1);
    std::string out = "stablecurve g=" + std::to_string(g) + " delta=" + std::to_string(c.delta) + " ell=" + std::to_string(c.ell) + "\n";
    out += "condition = " + std::string(rep.condition ? "true" : "false") + " exact\n";
    out += "report: " + rep.text + "\n";
    out += "h^1 = " + std::to_string(v.count) + " exact (g - sum pg = " + std::to_string(g - rep.pg_sum) + ")\n";
    return out;
}

// --- pipeline -----------------------------------------------------------

template <CoefficientField F>
MultiPoly<F> embed_relation(const MultiPoly<RationalField>& P, const F& K) {
    int m = P.nvars();
    MultiPoly<F> out(K, m + 2);
    for (const auto& [e, c] : P.terms()) {
        Exponent f{0, 0};
        f.insert(f.end(), e.begin(), e.end());
        out.add_term(f, K.from_rational(c));
    }
    return out;
}

template <CoefficientField F>
MultiPoly<F> embed_relation_same(const MultiPoly<F>& P) {
    int m = P.nvars();
    MultiPoly<F> out(P.field(), m + 2);
    for (const auto& [e, c] : P.terms()) {
        Exponent f{0, 0};
        f.insert(f.end(), e.begin(), e.end());
        out.add_term(f, c);
    }
    return out;
}

std::string run_pipeline(const Options& o) {
    auto br = io::Reader::from_file(o.input);
    auto kv = io::read_bundle(br, {"gvector", "matrix", "xi", "hodge", "places", "window"});
    for (const auto* key : {"gvector", "matrix", "xi", "hodge"})
        if (!kv.count(key)) throw InputError("pipeline: bundle is missing '" + std::string(key) + "'");
    fs::path base = fs::path(o.input).parent_path();
    std::string gpath = (base / kv["gvector"]).string(), mpath = (base / kv["matrix"]).string();
    NumberField KG = field_of(gpath, o), KM = field_of(mpath, o);
    if (!(KG == KM))
        throw InputError("pipeline: inconsistent field headers, gvector field=" + KG.header() + " but matrix field=" + KM.header());
    std::vector<int> hodge;
    for (const auto& h : io::split(kv["hodge"], ',')) hodge.push_back(io::parse_int(h, "hodge number"));
    int window = kv.count("window") ? io::parse_int(kv["window"], "window") : o.window;

    std::string out = "pipeline: ingredient verification, not a height-bound proof\n";
    with_field(KG, [&](const auto& K) {
        using F = std::decay_t<decltype(K)>;
        auto G = load_gvector(gpath, K);
        auto mr = io::Reader::from_file(mpath);
        auto tau = io::read_matrix(mr, K);
        int m = static_cast<int>(tau.rows());
        if (G.size() != m)
            throw InputError("pipeline: gvector has " + std::to_string(G.size()) + " entries but the matrix is " + std::to_string(m) + "x" +
                             std::to_string(m));
        auto xi = io::parse_coeff(K, kv["xi"]);
        int w = window < 0 ? std::min(G.order(), std::max(4, G.order() / 2)) : window;
        int k = hodge_invariant_bound(hodge, m);
        out += "hodge_bound k = " + std::to_string(k) + " exact\n";

        std::vector<std::pair<std::string, MultiPoly<F>>> relations;
        auto names = dual_names(m);
        int dmin = static_cast<int>(tau.minpoly().size()) - 1;
        if (dmin == m) {
            if constexpr (std::is_same_v<F, RationalField>) {
                auto lf = linear_factor_relations(tau);
                out += "linear_factor_product = " + lf.product.to_string(names) + " exact\n";
                relations.push_back({"linfactors", embed_relation(lf.product, K)});
            } else {
                out += "linear_factor_product = skipped (matrix not over Q)\n";
            }
        } else {
            out += "linear_factor_product = skipped (derogatory)\n";
        }
        if (k >= 1 && k < dmin) {
            for (const auto& mi : minor_relation(tau, k)) {
                std::string cols;
                for (int c : mi.columns) cols += (cols.empty() ? "" : ",") + std::to_string(c);
                auto P = mi.poly;
                if constexpr (std::is_same_v<F, NumberField>) {
                    auto N = galois_conjugate_product(P);
                    out += "minor " + cols + " norm = " + N.to_string(names) + " exact\n";
                    relations.push_back({"minor[" + cols + "]", embed_relation(N, K)});
                } else {
                    out += "minor " + cols + " = " + P.to_string(names) + " exact\n";
                    relations.push_back({"minor[" + cols + "]", embed_relation_same(P)});
                }
            }
        } else {
            out += "minors = skipped (k = " + std::to_string(k) + " not in [1, " + std::to_string(dmin - 1) + "])\n";
        }

        auto places = parse_places(kv.count("places") ? kv["places"] : "", KG);
        out += "table place | relevant | relation | verdict\n";
        for (const auto& v : places) {
            auto e = is_relevant(xi, v, G, w, o.precision);
            for (const auto& [name, P] : relations) {
                std::string verdict;
                if (e.relevant == Verdict::Yes) {
                    auto chk = relation_holds_at(P, xi, v, G, o.precision, w);
                    verdict = chk.to_string() + (chk.exact ? " exact" : " " + tag_window(w));
                } else {
                    verdict = "not checked";
                }
                out += "row " + e.place + " | " + verdict_string(e.relevant) + (e.estimate ? " " + tag_window(w) : " exact") + " | " + name +
                       " | " + verdict + "\n";
            }
            if (relations.empty())
                out += "row " + e.place + " | " + verdict_string(e.relevant) + (e.estimate ? " " + tag_window(w) : " exact") + " | - | -\n";
        }
    });
    return out;
}

void add_common(CLI::App* sc, Options& o) {
    sc->add_option("--field", o.field, "field as minimal polynomial coefficients c0,c1,...");
    sc->add_option("--precision", o.precision, "interval precision in bits")->check(CLI::Range(32L, 1L << 16));
    sc->add_option("--seed", o.seed, "seed for randomized checks");
    sc->add_option("-o,--output", o.output, "write the report to a file");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"gheight: series, places and relations toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    Options o;
    std::map<CLI::App*, std::function<std::string(const Options&)>> handlers;

    auto sub = [&](const std::string& name, const std::string& help, std::function<std::string(const Options&)> fn, bool input) {
        auto* sc = app.add_subcommand(name, help);
        add_common(sc, o);
        if (input) sc->add_option("input", o.input, "input file")->required()->check(CLI::ExistingFile);
        handlers[sc] = std::move(fn);
        return sc;
    };

    auto* diag = sub("diagonal", "mu-diagonal of a series or rational function", run_diagonal, true);
    diag->add_option("--mu", o.mu)->required();
    diag->add_option("--order", o.order)->required();

    sub("reduce", "relative reduction of a closed log form", run_reduce, true)->add_option("--order", o.order, "requested t-order");
    sub("invert", "formal inverse of an etale germ", run_invert, true)->add_option("--order", o.order)->required();

    auto* size = sub("size", "size estimates sigma_n", run_size, true);
    size->add_option("--order", o.order, "largest n");
    size->add_option("--step", o.step, "spacing of n");

    auto* rad = sub("radius", "v-adic radius estimates", run_radius, true);
    rad->add_option("--place", o.place, "inf or a prime");
    rad->add_option("--window", o.window);

    auto* rel = sub("relevant", "relevance of xi at a list of places", run_relevant, true);
    rel->add_option("--xi", o.xi)->required();
    rel->add_option("--places", o.places, "comma list of inf and primes");
    rel->add_option("--window", o.window);

    auto* fr = sub("funrel", "functional relations of bounded degree", run_funrel, true);
    fr->add_option("--degree", o.degree)->required();
    fr->add_option("--xdegree", o.xdegree)->required();
    fr->add_option("--order", o.order);

    sub("minors", "minor relations of an endomorphism", run_minors, true)->add_option("--k", o.k)->required();
    sub("linfactors", "linear factor relations of a nonderogatory endomorphism", run_linfactors, true);
    sub("galprod", "product over Galois conjugates", run_galprod, true);
    sub("dualgraph", "dual complex and vanishing cycle counts", run_dualgraph, true);

    auto* arr = sub("arrangement", "generic hyperplane arrangement count", run_arrangement, false);
    arr->add_option("--d", o.d)->required();
    arr->add_option("--n", o.n)->required();

    sub("stablecurve", "stable curve genus condition", run_stablecurve, true)->add_option("--genus", o.genus);
    auto* pipe = sub("pipeline", "chain the relation ingredients over a bundle", run_pipeline, true);
    pipe->add_option("--window", o.window);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    CLI::App* chosen = app.get_subcommands().front();
    try {
        std::string report = handlers.at(chosen)(o) + footer(o);
        if (o.output.empty()) {
            std::cout << report;
        } else {
            std::ofstream f(o.output, std::ios::binary);
            if (!f) throw InputError("cannot write '" + o.output + "'");
            f << report;
        }
    } catch (const OrderError& e) {
        std::cerr << "error: " << e.what() << "\nrequired order: " << e.required_order() << "\n";
        return 3;
    } catch (const PrecisionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const UnsupportedError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
