// Acceptance runner: one PASS/FAIL line per check. Exit status is the number of failed checks.
//   acceptance            run everything
//   acceptance --only ID  run the listed checks (repeatable)
//   acceptance --list     print the ids

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "CLI11.hpp"
#include "promenade/chord_diagrams.hpp"
#include "promenade/combinatorics.hpp"
#include "promenade/curve_io.hpp"
#include "promenade/curve_topology.hpp"
#include "promenade/gauss_words.hpp"
#include "promenade/puiseux.hpp"

using namespace promenade;

namespace {

// Pinned tolerances and budgets.
constexpr double integral_tolerance = 1e-3;
constexpr double ratio_tolerance = 0.01;
constexpr double link_budget_seconds = 60.0;
constexpr double separable_budget_seconds = 30.0;
constexpr double enumeration_budget_seconds = 120.0;
constexpr double equivalence_budget_seconds = 300.0;
constexpr int random_link_pairs = 50;

struct Outcome {
    bool pass = true;
    std::string detail;
};

/// Collects sub-check failures; the first few are kept in the detail line.
class Checker {
public:
    void expect(bool ok, const std::string& what) {
        if (ok) return;
        if (failures_++ < 4) notes_ += (notes_.empty() ? "" : "; ") + what;
    }
    void note(const std::string& s) { info_ += (info_.empty() ? "" : ", ") + s; }
    Outcome done() const {
        if (failures_ == 0) return {true, info_};
        return {false, std::to_string(failures_) + " failed: " + notes_};
    }

private:
    int failures_ = 0;
    std::string notes_, info_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fixed(double v, int digits) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(digits);
    os << v;
    return os.str();
}

const std::filesystem::path fixtures = PROMENADE_FIXTURES;

BivariatePolynomial P(const char* s) { return BivariatePolynomial::parse(s); }
FieldElement Q(long p, long q = 1) { return FieldElement(Rational(p, q)); }

const char* sextic = "y^6 - 5*x*y^5 + x^3*y^4 - 7*x^2*y^2 + 6*x^3 + x^4";

std::string read_polynomial(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---------------------------------------------------------------------------

Outcome enumeration_tables() {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<std::size_t> total = {2, 5, 18, 105, 902, 9749};
    const std::vector<std::size_t> dihedral = {2, 5, 17, 79, 554, 5283};
    const std::vector<std::size_t> analytic = {2, 5, 18, 102, 817, 7641};
    const std::vector<std::size_t> analytic_dihedral = {2, 5, 17, 76, 499, 4132};
    Checker c;
    for (int n = 2; n <= 7; ++n) {
        const auto k = static_cast<std::size_t>(n - 2);
        const auto a = count_diagrams(n, Symmetry::rotation, EnumFilter::all);
        const auto b = count_diagrams(n, Symmetry::dihedral, EnumFilter::all);
        const auto d = count_diagrams(n, Symmetry::rotation, EnumFilter::analytic);
        const auto e = count_diagrams(n, Symmetry::dihedral, EnumFilter::analytic);
        c.expect(a == total[k], "n=" + std::to_string(n) + " total " + std::to_string(a));
        c.expect(b == dihedral[k], "n=" + std::to_string(n) + " dihedral " + std::to_string(b));
        c.expect(d == analytic[k], "n=" + std::to_string(n) + " analytic " + std::to_string(d));
        c.expect(e == analytic_dihedral[k], "n=" + std::to_string(n) + " analytic dihedral " + std::to_string(e));
        if (n == 7)
            c.note("n=7: " + std::to_string(a) + "/" + std::to_string(b) + "/" + std::to_string(d) + "/" + std::to_string(e));
    }
    const double s = seconds_since(t0);
    c.expect(s < enumeration_budget_seconds, "took " + fixed(s, 1) + " s");
    c.note(fixed(s, 1) + " s");
    return c.done();
}

Outcome basic_census() {
    const std::map<int, std::multiset<std::string>> want = {
        {5, {"C5", "gem", "house"}}, {6, {"C6", "domino"}}, {7, {"C7"}}};
    Checker c;
    for (const auto& [n, names] : want) {
        std::multiset<std::string> got;
        for (const auto& e : enumerate_diagrams(n, Symmetry::rotation, EnumFilter::basic_non_analytic))
            got.insert(forbidden_witness(ChordDiagram::parse(e.word))->name);
        std::string list;
        for (const auto& g : got) list += (list.empty() ? "" : " ") + g;
        c.expect(got == names, "n=" + std::to_string(n) + " got {" + list + "}");
        c.note("n=" + std::to_string(n) + " {" + list + "}");
    }
    return c.done();
}

Outcome separable_counts() {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<int> a = {0, 1, 2, 6, 22, 90, 394, 1806, 8558};
    Checker c;
    for (int n = 1; n <= 8; ++n) {
        int count = 0;
        for (const auto& p : all_permutations(n)) count += is_separable(p);
        c.expect(count == a[n], "|Sep(S_" + std::to_string(n) + ")| = " + std::to_string(count));
        c.expect(schroeder(n).a == a[n], "a(" + std::to_string(n) + ") table");
    }
    c.expect(schroeder(10).b == 103049, "b(10) = " + schroeder(10).b.str());
    const double s = seconds_since(t0);
    c.expect(s < separable_budget_seconds, "took " + fixed(s, 1) + " s");
    c.note("|Sep(S_8)| = 8558, b(10) = " + schroeder(10).b.str() + ", " + fixed(s, 2) + " s");
    return c.done();
}

Outcome sextic_first_branch() {
    const auto f = P(sextic);
    const auto bs = expand_branches(f, 8, Side::positive);
    Checker c;
    c.expect(!bs.empty(), "no positive branches");
    if (bs.empty()) return c.done();
    const auto& b = bs.front();
    c.expect(b.m == 2 && b.sigma == 1, "x = t^2 expected");
    const std::vector<FieldElement> want = {Q(1), Q(-5, 8), Q(79, 32), Q(-14185, 1024)};
    for (std::size_t k = 0; k < want.size(); ++k)
        c.expect(b.coeffs.size() > k + 1 && b.coeffs[k + 1] == want[k], "coefficient of t^" + std::to_string(k + 1));
    const auto v = residual_valuation(f, b);
    c.expect(v && b.residual_bound && *v >= *b.residual_bound, "residual below bound");
    if (v && b.residual_bound)
        c.note("1, -5/8, 79/32, -14185/1024; v(F) = " + std::to_string(*v) + " >= bound " + std::to_string(*b.residual_bound));
    return c.done();
}

Outcome sextic_real_branches() {
    const auto bs = real_branches(P(sextic));
    Checker c;
    int pos = 0, neg = 0;
    for (const auto& b : bs) (b.sigma > 0 ? pos : neg) += 1;
    c.expect(bs.size() == 3, std::to_string(bs.size()) + " real branches");
    c.expect(pos == 2 && neg == 1, "sides " + std::to_string(pos) + "+" + std::to_string(neg));
    if (bs.size() == 3) {
        c.expect(bs[1].coeffs[1] == FieldElement::sqrt_of(2), "second leading coefficient not sqrt 2");
        c.expect(bs[2].coeffs[1] == FieldElement::sqrt_of(3), "third leading coefficient not sqrt 3");
    }
    c.note("x>0: u0 = 1, sqrt2; x<0: u0 = sqrt3");
    return c.done();
}

Outcome f0_first_step() {
    const auto f0 = P(read_polynomial(fixtures / "curves" / "f0.txt").c_str());
    Checker c;
    const auto poly = newton_polygon(f0);
    c.expect(!poly.segments.empty(), "empty polygon");
    if (poly.segments.empty()) return c.done();
    const auto& s = poly.segments.front();
    c.expect(s.alpha == 2 && s.beta == 1 && s.gamma == 7, "first segment is not 2i + j = 7");
    const auto p = dominant_polynomial(f0, s);
    c.expect(p.to_string() == "u^7 - u^3", "p(u) = " + p.to_string());
    const auto f1 = substitute_step(f0, 2, 1, Q(1));
    const auto reference_f1 = P(
        "x + 4*y + 2*x^2 + 2*x*y + 18*y^2 + 6*x^2*y + x*y^2 + 34*y^3 + 10*x^2*y^2 + 35*y^4 + 10*x^2*y^3 + 21*y^5"
        " + 5*x^2*y^4 + 7*y^6 + 3*x^7 + x^2*y^5 + y^7 + x^8 + 10*x^7*y + x^8*y + 21*x^7*y^2 + 24*x^7*y^3"
        " + 16*x^7*y^4 + 6*x^7*y^5 + x^7*y^6");
    c.expect(f1 == reference_f1, "F1 differs from the reference");
    c.note("2i + j = 7, p = " + p.to_string() + ", F1 has " + std::to_string(f1.terms().size()) + " terms");
    return c.done();
}

Outcome characteristics() {
    Checker c;
    PuiseuxBranch b;
    b.m = 6;
    b.coeffs.assign(11, FieldElement());
    b.coeffs[9] = Q(1);
    b.coeffs[10] = Q(1);
    b.order = 10;
    b.exact = true;
    const auto direct = puiseux_characteristic(b).to_string();
    c.expect(direct == "(6; 9, 10)", "(t^6, t^9 + t^10) gives " + direct);
    const auto milnor = P(read_polynomial(fixtures / "curves" / "milnor.txt").c_str());
    const auto expanded = puiseux_characteristic(expand_branches(milnor, 8, Side::complex).at(0)).to_string();
    c.expect(expanded == "(6; 9, 10)", "expanded branch gives " + expanded);
    const auto cusp = puiseux_characteristic(expand_branches(P("y^2 - x^3")).at(0)).to_string();
    c.expect(cusp == "(2; 3)", "cusp gives " + cusp);
    c.note(direct + ", " + cusp);
    return c.done();
}

Outcome equivalence_suite() {
    const auto t0 = std::chrono::steady_clock::now();
    Checker c;
    long diagrams = 0, matchings = 0;
    for (int n = 1; n <= 7; ++n)
        for_each_matching(n, [&](const std::vector<int>& p) {
            const ChordDiagram d{std::vector<int>(p)};
            ++diagrams;
            c.expect(is_analytic(d) == classify_graph(interlace_graph(d)).collapsible, "reduction vs collapsible: " + d.word());
            if (n <= 6) {
                ++matchings;
                c.expect(genus(d) == ribbon_genus(d), "genus: " + d.word());
            }
        });
    const double s = seconds_since(t0);
    c.expect(s < equivalence_budget_seconds, "took " + fixed(s, 1) + " s");
    c.note(std::to_string(diagrams) + " labelled diagrams n<=7, " + std::to_string(matchings) + " genus checks n<=6, " +
           fixed(s, 1) + " s");
    return c.done();
}

Outcome gauss_words() {
    Checker c;
    const auto w = GaussWord::parse("[a1][a2][a3][a4][a5][a1][a6][a3][a2][a5][a4][a6]");
    const auto v = is_realizable_unsigned_verdict(w);
    c.expect(!v.realizable, "Cairns-Elton word accepted");
    std::string cycle;
    for (int l : v.failing_cycle) cycle += (cycle.empty() ? "" : "->") + w.name(l);
    c.expect(cycle == "[a1]->[a3]->[a5]->[a1]", "cycle " + cycle);
    long words = 0;
    for (int n = 1; n <= 5; ++n)
        for_each_matching(n, [&](const std::vector<int>& p) {
            const GaussWord g(ChordDiagram{std::vector<int>(p)}.letters());
            ++words;
            const bool a = is_realizable_unsigned_verdict(g).realizable;
            c.expect(a == lovasz_marx_realizable(g), "Lovasz-Marx: " + g.to_string());
            c.expect(a == planar_signing_by_search(g).has_value(), "signing search: " + g.to_string());
        });
    c.note("rejected via " + cycle + "; " + std::to_string(words) + " words n<=5 agree");
    return c.done();
}

Outcome linking() {
    const auto t0 = std::chrono::steady_clock::now();
    Checker c;
    double worst = 0;
    auto all = [&](const PolyCurve3D& a, const PolyCurve3D& b, const std::string& what) {
        const int p = linking_projection(a, b);
        const auto g = linking_gauss_integral(a, b);
        const int s = linking_morse_slices(a, b);
        const double gap = std::abs(g.value - g.rounded);
        worst = std::max(worst, gap);
        c.expect(p == g.rounded && p == s,
                 what + ": " + std::to_string(p) + "/" + std::to_string(g.rounded) + "/" + std::to_string(s));
        c.expect(gap < integral_tolerance, what + ": integral off by " + std::to_string(gap));
        return p;
    };
    auto fixture = [](const char* name) { return load_curve(fixtures / "links" / (std::string(name) + ".json")); };
    const int hopf = all(fixture("hopf_a"), fixture("hopf_b"), "Hopf");
    const int whitehead = all(fixture("whitehead_a"), fixture("whitehead_b"), "Whitehead");
    const int separated = all(fixture("separated_a"), fixture("separated_b"), "separated");
    c.expect(std::abs(hopf) == 1, "Hopf lk " + std::to_string(hopf));
    c.expect(whitehead == 0, "Whitehead lk " + std::to_string(whitehead));
    c.expect(separated == 0, "separated lk " + std::to_string(separated));
    int linked = 0;
    for (int i = 0; i < random_link_pairs; ++i) {
        const auto [a, b] = random_curve_pair(default_link_seed + static_cast<std::uint64_t>(i));
        linked += all(a, b, "random pair " + std::to_string(i)) != 0;
    }
    const double s = seconds_since(t0);
    c.expect(s < link_budget_seconds, "took " + fixed(s, 1) + " s");
    c.note("Hopf " + std::to_string(hopf) + ", Whitehead 0, separated 0, " + std::to_string(random_link_pairs) +
           " random pairs agree (" + std::to_string(linked) + " linked), max integral gap " + fixed(worst, 6) + ", " +
           fixed(s, 2) + " s");
    return c.done();
}

Outcome alexander() {
    Checker c;
    const auto t = torus_alexander(3, 2).to_string();
    c.expect(t == "X^2 - X + 1", "(3,2) gives " + t);
    // 1 - X + X^3 - X^4 + ... + X^18 - X^20 + X^21 - ... - X^35 + X^36
    std::vector<long long> expected(37, 0);
    for (int e : {0, 3, 6, 9, 12, 15, 18, 21, 24, 27, 30, 33, 36}) expected[e] = 1;
    for (int e : {1, 4, 7, 10, 13, 16, 20, 23, 26, 29, 32, 35}) expected[e] = -1;
    const auto a = torus_alexander(19, 3);
    c.expect(a.coefficients() == expected, "(19,3) gives " + a.to_string());
    c.note("(3,2) = " + t + ", (19,3) degree " + std::to_string(a.degree()) + " term-for-term");
    return c.done();
}

Outcome generator_bound() {
    Checker c;
    for (int n = 1; n <= 7; ++n) {
        const BigInt a = count_diagrams(n, Symmetry::rotation, EnumFilter::analytic);
        BigInt bound = catalan(static_cast<unsigned>(n - 1));
        for (int k = 1; k < n; ++k) bound *= 6;
        c.expect(a <= bound, "n=" + std::to_string(n) + ": " + a.str() + " > " + bound.str());
    }
    c.note("a_7 = 7641 <= 6^6 C_6 = 6531840");
    return c.done();
}

Outcome growth_ratio() {
    using F = boost::multiprecision::cpp_bin_float_50;
    const auto t = schroeder_table(41);
    const F ratio = F(t[41].a) / F(t[40].a);
    const F limit = 3 + 2 * sqrt(F(2));
    const double gap = static_cast<double>(abs(ratio - limit));
    Outcome o;
    o.pass = gap < ratio_tolerance;
    o.detail = "a(41)/a(40) = " + fixed(static_cast<double>(ratio), 4) + ", 3+2sqrt2 = " + fixed(static_cast<double>(limit), 4) +
               ", gap " + fixed(gap, 4) + (o.pass ? " < " : " >= ") + fixed(ratio_tolerance, 2);
    return o;
}

Outcome loday_identities() {
    Checker c;
    long trees = 0;
    for (int n = 2; n <= 5; ++n)
        for (const auto& t : all_binary_trees(n)) {
            ++trees;
            const auto x = loday_embedding(t);
            BigInt s = 0;
            for (const auto& v : x) s += v;
            c.expect(s == n * (n - 1) / 2, "hyperplane: " + t.to_string());
            for (int q = 2; q < n; ++q)
                for (int p = 1; p + q - 1 <= n; ++p) {
                    const BigInt l = loday_face_function(x, p, q), target = q * (q - 1) / 2;
                    c.expect(in_loday_face(t, p, q) ? l == target : l > target, "face " + std::to_string(p) + "," +
                                                                                   std::to_string(q) + ": " + t.to_string());
                }
        }
    c.note(std::to_string(trees) + " binary trees n<=5");
    return c.done();
}

Outcome corpus_diagrams() {
    Checker c;
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(fixtures / "curves"))
        if (e.path().extension() == ".txt") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    c.expect(!files.empty(), "no curve fixtures");
    for (const auto& f : files) {
        try {
            const auto d = diagram_of_singularity(P(read_polynomial(f).c_str()));
            c.expect(is_analytic(d), f.stem().string() + " gives non-analytic " + d.word());
        } catch (const Error& e) {
            c.expect(false, f.stem().string() + ": " + e.what());
        }
    }
    c.note(std::to_string(files.size()) + " fixture curves");
    return c.done();
}

struct Check {
    std::string id, title;
    std::function<Outcome()> run;
};

const std::vector<Check>& checks() {
    static const std::vector<Check> all = {
        {"1", "enumeration tables n=2..7", enumeration_tables},
        {"2", "basic non-analytic census", basic_census},
        {"3", "separable counts and Schroeder numbers", separable_counts},
        {"4", "sextic u0=1 branch", sextic_first_branch},
        {"5", "sextic real branches", sextic_real_branches},
        {"6", "F0 first Newton step", f0_first_step},
        {"7", "Puiseux characteristics", characteristics},
        {"8", "reduction/collapsible and genus equivalences", equivalence_suite},
        {"9", "Gauss word realizability", gauss_words},
        {"10", "linking numbers", linking},
        {"11", "torus knot Alexander polynomials", alexander},
        {"12a", "analytic count below generator bound", generator_bound},
        {"12b", "Schroeder growth ratio at n=40", growth_ratio},
        {"12c", "Loday hyperplane and supporting functions", loday_identities},
        {"12d", "singularity diagrams analytic on corpus", corpus_diagrams},
    };
    return all;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance checks"};
    std::vector<std::string> only;
    bool list = false;
    app.add_option("--only", only, "check ids to run");
    app.add_flag("--list", list, "print the check ids");
    CLI11_PARSE(app, argc, argv);

    if (list) {
        for (const auto& c : checks()) std::cout << c.id << "  " << c.title << "\n";
        return 0;
    }
    for (const auto& id : only)
        if (std::none_of(checks().begin(), checks().end(), [&](const Check& c) { return c.id == id; })) {
            std::cerr << "unknown check " << id << "\n";
            return 2;
        }

    int failed = 0;
    for (const auto& c : checks()) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.title << ": " << o.detail << std::endl;
    }
    return failed;
}
