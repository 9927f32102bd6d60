// promenade: command-line front end for the library.
// Exit codes: 0 success, 1 domain error, 2 usage error.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "promenade/combinatorics.hpp"
#include "promenade/curve_io.hpp"
#include "promenade/curve_topology.hpp"
#include "promenade/gauss_words.hpp"
#include "promenade/puiseux.hpp"
#include "promenade/render.hpp"

using json = nlohmann::ordered_json;
using namespace promenade;

namespace {

enum class Format { json, text };

struct Out {
    Format format = Format::json;

    void emit(const json& j, const std::string& text) const {
        if (format == Format::json) std::cout << j.dump() << "\n";
        else std::cout << text << "\n";
    }
};

/// Integer-valued JSON when the value fits in 64 bits, else its decimal string.
json big(const BigInt& v) {
    if (v <= std::numeric_limits<long long>::max() && v >= std::numeric_limits<long long>::min())
        return v.convert_to<long long>();
    return v.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string s = ss.str();
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    return s;
}

std::string join(const std::vector<int>& v, const char* sep = ",") {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
    return s;
}

// ---- perm / tree / assoc

void perm_check(const Out& out, const std::string& arg) {
    const auto p = Permutation::parse(arg);
    const auto w = separability_witness(p);
    json j{{"separable", !w}, {"witness_pattern", nullptr}};
    std::string text = "separable";
    if (w) {
        j["witness_pattern"] = w->pattern.images();
        j["witness_positions"] = w->positions;
        text = "not separable: pattern " + w->pattern.to_string() + " at positions " + join(w->positions);
    }
    out.emit(j, text);
}

void perm_realize(const Out& out, const std::string& arg) {
    const auto p = Permutation::parse(arg);
    json polys = json::array();
    std::string text;
    int k = 1;
    for (const auto& q : realize_polynomial_interchange(p)) {
        polys.push_back(q.to_string());
        text += "P" + std::to_string(k++) + "(x) = " + q.to_string() + "\n";
    }
    text.pop_back();
    out.emit({{"permutation", p.images()}, {"polynomials", polys}}, text);
}

void perm_count(const Out& out, int n) {
    if (n < 1) throw InvalidInput("n must be positive");
    const auto s = schroeder(static_cast<unsigned>(n));
    json j{{"n", n}, {"a", big(s.a)}, {"b", big(s.b)}};
    std::string text = "a(" + std::to_string(n) + ") = " + s.a.str() + ", b(" + std::to_string(n) + ") = " + s.b.str();
    if (n <= 9) {
        long count = 0;
        for (const auto& p : all_permutations(n)) count += is_separable(p);
        j["enumerated"] = count;
        text += ", enumerated " + std::to_string(count);
    }
    out.emit(j, text);
}

void tree_of_perm(const Out& out, const std::string& arg) {
    const auto t = tree_from_perm(Permutation::parse(arg));
    out.emit({{"tree", t.to_string()}}, t.to_string());
}

void assoc_loday(const Out& out, const std::string& arg) {
    const auto t = BinaryTree::parse(arg);
    json pt = json::array();
    BigInt sum = 0;
    std::string text = "(";
    for (const auto& x : loday_embedding(t)) {
        pt.push_back(big(x));
        sum += x;
        text += (text.size() > 1 ? ", " : "") + x.str();
    }
    out.emit({{"tree", t.to_string()}, {"point", pt}, {"sum", big(sum)}}, text + ")");
}

// ---- diagram / gauss

json witness_json(const ForbiddenWitness& w) {
    return {{"name", w.name}, {"chords", w.chords}, {"positions", w.positions}, {"word", w.word}};
}

void diagram_check(const Out& out, const std::string& arg) {
    const auto d = ChordDiagram::parse(arg);
    const auto trace = reduce(d);
    json moves = json::array();
    for (const auto& m : trace.moves) moves.push_back({{"kind", move_name(m.kind)}, {"chord", m.chord}});
    json j{{"word", letters_to_word(d.letters())},
           {"canonical", canonical_form(d, Symmetry::rotation)},
           {"analytic", trace.analytic},
           {"moves", moves},
           {"stuck", trace.analytic ? json(nullptr) : json(letters_to_word(trace.stuck))}};
    std::string text = trace.analytic ? "analytic" : "not analytic";
    if (!trace.analytic) {
        const auto w = forbidden_witness(d);
        if (w) {
            j["witness"] = witness_json(*w);
            text += " (contains " + w->name + ": " + w->word + ")";
        }
    }
    out.emit(j, text);
}

void diagram_genus(const Out& out, const std::string& arg) {
    const auto d = ChordDiagram::parse(arg);
    const int g = genus(d);
    out.emit({{"word", letters_to_word(d.letters())}, {"genus", g}}, "genus " + std::to_string(g));
}

void diagram_witness(const Out& out, const std::string& arg) {
    const auto d = ChordDiagram::parse(arg);
    const auto w = forbidden_witness(d);
    out.emit({{"analytic", !w}, {"witness", w ? witness_json(*w) : json(nullptr)}},
             w ? w->name + " " + w->word + " at positions " + join(w->positions) : "analytic: no witness");
}

void diagram_enumerate(const Out& out, int n, const std::string& filter, const std::string& symmetry, bool count_only) {
    const EnumFilter f = filter == "analytic" ? EnumFilter::analytic
                         : filter == "basic"  ? EnumFilter::basic_non_analytic
                                              : EnumFilter::all;
    const Symmetry s = symmetry == "dihedral" ? Symmetry::dihedral : Symmetry::rotation;
    const auto list = enumerate_diagrams(n, s, f);
    if (count_only) {
        out.emit({{"count", list.size()}}, std::to_string(list.size()));
        return;
    }
    for (const auto& e : list)
        out.emit({{"word", e.word}, {"analytic", e.analytic}, {"genus", e.genus}},
                 e.word + " " + (e.analytic ? "analytic" : "non-analytic") + " genus " + std::to_string(e.genus));
}

void diagram_render(const std::string& arg, bool witness, int size) {
    const auto d = ChordDiagram::parse(arg);
    std::set<int> hi;
    if (witness)
        if (const auto w = forbidden_witness(d))
            hi.insert(w->chords.begin(), w->chords.end());
    std::cout << render_chord_diagram_svg(d, hi, size);
}

void gauss_check(const Out& out, const std::string& arg, bool is_signed) {
    if (is_signed) {
        const auto w = SignedGaussWord::parse(arg);
        const bool ok = is_realizable_signed(w);
        const int b = boundary_components(w);
        out.emit({{"realizable", ok},
                  {"method", "signed-conditions"},
                  {"certificate", {{"boundary_components", b}, {"genus", surface_genus_signed(w)}}}},
                 std::string(ok ? "realizable" : "not realizable") + " (" + std::to_string(b) + " boundary components)");
        return;
    }
    const auto w = GaussWord::parse(arg);
    const auto v = is_realizable_unsigned_verdict(w);
    json cert = nullptr;
    std::string text = v.realizable ? "realizable" : "not realizable";
    if (v.rotation_system) {
        std::string sw;
        for (const auto& t : v.rotation_system->signed_word) sw += t;
        cert = {{"signed_word", sw}, {"rotation", v.rotation_system->rotation}, {"genus", v.rotation_system->genus()}};
        text += ": " + sw;
    } else if (!v.failing_cycle.empty()) {
        json cyc = json::array();
        std::string path;
        for (int c : v.failing_cycle) {
            cyc.push_back(w.name(c));
            path += (path.empty() ? "" : " -> ") + w.name(c);
        }
        cert = {{"failing_cycle", cyc}};
        text += ": odd cycle " + path;
    } else if (!v.reason.empty()) {
        cert = {{"reason", v.reason}};
        text += ": " + v.reason;
    }
    out.emit({{"realizable", v.realizable}, {"method", v.method}, {"certificate", cert}}, text);
}

// ---- puiseux / curve / link / knot

json branch_json(const PuiseuxBranch& b) {
    json coeffs = json::array();
    for (const auto& c : b.coeffs) coeffs.push_back(c.to_string());
    json j{{"side", b.sigma < 0 ? "neg" : "pos"},
           {"x", b.x_string()},
           {"y", b.y_string()},
           {"m", b.m},
           {"coefficients", coeffs},
           {"exact", b.exact},
           {"residual_bound", b.residual_bound ? json(*b.residual_bound) : json(nullptr)},
           {"multiplicity", b.multiplicity()}};
    try {
        j["characteristic"] = puiseux_characteristic(b).to_string();
    } catch (const TruncationTooShort&) {
        j["characteristic"] = nullptr;
    }
    return j;
}

void puiseux_polygon(const Out& out, const std::string& poly, bool svg, int chosen) {
    const auto f = BivariatePolynomial::parse(poly);
    const auto p = newton_polygon(f);
    if (svg) {
        std::optional<std::size_t> c;
        if (chosen >= 0) {
            if (chosen >= static_cast<int>(p.segments.size())) throw InvalidInput("no segment " + std::to_string(chosen));
            c = static_cast<std::size_t>(chosen);
        }
        std::cout << render_newton_polygon_svg(p, c);
        return;
    }
    json segs = json::array();
    std::string text;
    for (const auto& s : p.segments) {
        json pts = json::array();
        for (const auto& [i, j] : s.points) pts.push_back({i, j});
        const auto dom = dominant_polynomial(f, s).to_string();
        segs.push_back({{"alpha", s.alpha}, {"beta", s.beta}, {"gamma", s.gamma}, {"points", pts}, {"dominant", dom}});
        text += std::to_string(s.alpha) + "i + " + std::to_string(s.beta) + "j = " + std::to_string(s.gamma) + "   p(u) = " + dom + "\n";
    }
    json verts = json::array();
    for (const auto& [i, j] : p.vertices) verts.push_back({i, j});
    if (!text.empty()) text.pop_back();
    out.emit({{"segments", segs}, {"vertices", verts}}, text);
}

void puiseux_expand(const Out& out, const std::string& poly, int order, const std::string& side) {
    const auto f = BivariatePolynomial::parse(poly);
    std::vector<PuiseuxBranch> branches;
    if (side == "pos" || side == "both") branches = expand_branches(f, order, Side::positive);
    if (side == "neg" || side == "both")
        for (auto& b : expand_branches(f, order, Side::negative)) branches.push_back(std::move(b));
    if (side == "complex") branches = expand_branches(f, order, Side::complex);
    json arr = json::array();
    std::string text;
    for (const auto& b : branches) {
        arr.push_back(branch_json(b));
        if (side == "complex") arr.back()["side"] = "complex";
        text += "x = " + b.x_string() + ", y = " + b.y_string() + "\n";
    }
    if (!text.empty()) text.pop_back();
    out.emit({{"branches", arr}}, text.empty() ? "no branches" : text);
}

void curve_diagram(const Out& out, const std::string& path, int order) {
    const auto f = BivariatePolynomial::parse(read_text_file(path));
    const auto d = diagram_of_singularity(f, order);
    const auto w = letters_to_word(d.letters());
    out.emit({{"polynomial", f.to_string()}, {"word", w}, {"chords", d.chords()}, {"analytic", is_analytic(d)}}, w);
}

void link_compute(const Out& out, const std::string& method, const std::string& a, const std::string& b, std::uint64_t seed) {
    const auto c1 = load_curve(a), c2 = load_curve(b);
    json j{{"method", method}};
    std::string text;
    if (method == "proj" || method == "all") j["projection"] = linking_projection(c1, c2, seed);
    if (method == "slices" || method == "all") j["slices"] = linking_morse_slices(c1, c2, seed);
    if (method == "integral" || method == "all") {
        const auto g = linking_gauss_integral(c1, c2);
        j["integral"] = g.value;
        j["integral_rounded"] = g.rounded;
    }
    const int lk = method == "proj" ? j["projection"].get<int>()
                 : method == "slices" ? j["slices"].get<int>()
                 : j.contains("projection") ? j["projection"].get<int>()
                                            : j["integral_rounded"].get<int>();
    j["linking_number"] = lk;
    text = "linking number " + std::to_string(lk);
    if (j.contains("integral")) text += " (integral " + std::to_string(j["integral"].get<double>()) + ")";
    out.emit(j, text);
}

void knot_alexander(const Out& out, int p, int q) {
    const auto a = torus_alexander(p, q);
    out.emit({{"p", p}, {"q", q}, {"degree", a.degree()}, {"coefficients", a.coefficients()}, {"polynomial", a.to_string()}},
             a.to_string());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Plane-curve singularities: permutations, chord diagrams, Gauss words, Puiseux series, linking"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "json";
    std::uint64_t seed = default_link_seed;
    app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--seed", seed, "seed for generic rotations")->capture_default_str();

    std::function<void(const Out&)> run;
    std::string arg, arg2, opt = "all", symmetry = "rotation", side = "pos", method = "proj";
    int n = 0, order = default_truncation, size = 400, segment = -1, p = 0, q = 0;
    bool flag = false, flag2 = false;

    auto* perm = app.add_subcommand("perm", "separable permutations");
    perm->require_subcommand(1);
    auto* pc = perm->add_subcommand("check", "separability with a forbidden-pattern witness");
    pc->add_option("perm", arg, "one-line notation, e.g. 2,4,1,3")->required();
    pc->callback([&] { run = [&](const Out& o) { perm_check(o, arg); }; });
    auto* pr = perm->add_subcommand("realize", "polynomials realising the permutation");
    pr->add_option("perm", arg)->required();
    pr->callback([&] { run = [&](const Out& o) { perm_realize(o, arg); }; });
    auto* pn = perm->add_subcommand("count", "Schroeder numbers a(n), b(n)");
    pn->add_option("n", n)->required();
    pn->callback([&] { run = [&](const Out& o) { perm_count(o, n); }; });

    auto* tree = app.add_subcommand("tree", "pruned trees");
    tree->require_subcommand(1);
    auto* top = tree->add_subcommand("of-perm", "pruned tree of a separable permutation");
    top->add_option("perm", arg)->required();
    top->callback([&] { run = [&](const Out& o) { tree_of_perm(o, arg); }; });

    auto* assoc = app.add_subcommand("assoc", "associahedron");
    assoc->require_subcommand(1);
    auto* lod = assoc->add_subcommand("loday", "Loday coordinates of a binary tree");
    lod->add_option("tree", arg, "e.g. \"((1 2) 3)\"")->required();
    lod->callback([&] { run = [&](const Out& o) { assoc_loday(o, arg); }; });

    auto* diag = app.add_subcommand("diagram", "chord diagrams");
    diag->require_subcommand(1);
    auto* dc = diag->add_subcommand("check", "analyticity by reduction");
    dc->add_option("word", arg)->required();
    dc->callback([&] { run = [&](const Out& o) { diagram_check(o, arg); }; });
    auto* dg = diag->add_subcommand("genus", "genus of the diagram");
    dg->add_option("word", arg)->required();
    dg->callback([&] { run = [&](const Out& o) { diagram_genus(o, arg); }; });
    auto* dw = diag->add_subcommand("witness", "basic non-analytic sub-diagram");
    dw->add_option("word", arg)->required();
    dw->callback([&] { run = [&](const Out& o) { diagram_witness(o, arg); }; });
    auto* de = diag->add_subcommand("enumerate", "all diagrams with n chords, NDJSON");
    de->add_option("n", n)->required();
    de->add_option("--filter", opt)->check(CLI::IsMember({"all", "analytic", "basic"}))->capture_default_str();
    de->add_option("--symmetry", symmetry)->check(CLI::IsMember({"rotation", "dihedral"}))->capture_default_str();
    de->add_flag("--count-only", flag);
    de->callback([&] { run = [&](const Out& o) { diagram_enumerate(o, n, opt, symmetry, flag); }; });
    auto* dr = diag->add_subcommand("render", "SVG drawing");
    dr->add_option("word", arg)->required();
    dr->add_flag("--witness", flag, "highlight a non-analytic witness");
    dr->add_option("--size", size)->check(CLI::Range(50, 4000))->capture_default_str();
    dr->callback([&] { run = [&](const Out&) { diagram_render(arg, flag, size); }; });

    auto* gauss = app.add_subcommand("gauss", "Gauss words");
    gauss->require_subcommand(1);
    auto* gc = gauss->add_subcommand("check", "planar realizability");
    gc->add_option("word", arg)->required();
    auto* sg = gc->add_flag("--signed", flag, "word carries +/- exponents");
    gc->add_flag("--unsigned", flag2)->excludes(sg);
    gc->callback([&] { run = [&](const Out& o) { gauss_check(o, arg, flag); }; });

    auto* pu = app.add_subcommand("puiseux", "Newton-Puiseux expansion");
    pu->require_subcommand(1);
    auto* pp = pu->add_subcommand("polygon", "Newton polygon and dominant polynomials");
    pp->add_option("F", arg)->required();
    pp->add_flag("--svg", flag);
    pp->add_option("--segment", segment, "segment to highlight in the SVG");
    pp->callback([&] { run = [&](const Out& o) { puiseux_polygon(o, arg, flag, segment); }; });
    auto* pe = pu->add_subcommand("expand", "branches of F = 0 at the origin");
    pe->add_option("F", arg)->required();
    pe->add_option("--order", order)->check(CLI::Range(1, 200))->capture_default_str();
    pe->add_option("--side", side)->check(CLI::IsMember({"pos", "neg", "both", "complex"}))->capture_default_str();
    pe->callback([&] { run = [&](const Out& o) { puiseux_expand(o, arg, order, side); }; });

    auto* curve = app.add_subcommand("curve", "real singularities");
    curve->require_subcommand(1);
    auto* cd = curve->add_subcommand("diagram", "chord diagram of the singularity at the origin");
    cd->add_option("file", arg, "file containing F")->required()->check(CLI::ExistingFile);
    cd->add_option("--order", order)->check(CLI::Range(1, 200))->capture_default_str();
    cd->callback([&] { run = [&](const Out& o) { curve_diagram(o, arg, order); }; });

    auto* link = app.add_subcommand("link", "linking numbers");
    link->require_subcommand(1);
    auto* lc = link->add_subcommand("compute", "linking number of two closed polygons");
    lc->add_option("--method", method)->check(CLI::IsMember({"proj", "integral", "slices", "all"}))->capture_default_str();
    lc->add_option("c1", arg)->required()->check(CLI::ExistingFile);
    lc->add_option("c2", arg2)->required()->check(CLI::ExistingFile);
    lc->callback([&] { run = [&](const Out& o) { link_compute(o, method, arg, arg2, seed); }; });

    auto* knot = app.add_subcommand("knot", "torus knots");
    knot->require_subcommand(1);
    auto* ka = knot->add_subcommand("alexander", "Alexander polynomial of the (p, q) torus knot");
    ka->add_option("p", p)->required();
    ka->add_option("q", q)->required();
    ka->callback([&] { run = [&](const Out& o) { knot_alexander(o, p, q); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const Out out{format == "text" ? Format::text : Format::json};
    try {
        run(out);
    } catch (const Error& e) {
        if (out.format == Format::json)
            std::cout << json{{"error", {{"kind", e.kind()}, {"detail", e.detail()}}}}.dump() << "\n";
        else
            std::cerr << e.kind() << ": " << e.detail() << "\n";
        return 1;
    }
    return 0;
}
