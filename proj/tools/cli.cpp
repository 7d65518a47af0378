// Command-line front end: batch computations over the word algebras, the
// depth-graded machinery, insertion bases, weight-graded reduction, the
// numeric oracle, partial-compactification dimensions, Picard expansions,
// and the acceptance-suite runner.

#include <CLI11.hpp>
#include <json.hpp>

#include <mzv/acceptance.hpp>
#include <mzv/cellzeta.hpp>
#include <mzv/depthgraded.hpp>
#include <mzv/insertion.hpp>
#include <mzv/partialcohom.hpp>
#include <mzv/picard.hpp>
#include <mzv/words.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

using json = nlohmann::ordered_json;
using namespace mzv;

namespace {

constexpr const char* kSchema = "mzv-cli/1";

struct Output {
    std::string format = "text";  // "text" or "json"
    std::string path;             // empty = stdout

    void emit(const json& doc, const std::string& text) const {
        std::string payload;
        if (format == "json") {
            json full;
            full["schema"] = kSchema;
            full.update(doc);
            payload = full.dump(2) + "\n";
        } else {
            payload = text;
        }
        if (path.empty()) {
            std::cout << payload;
            return;
        }
        std::string full_path = path;
        const char* dir = std::getenv("MZV_OUTPUT_DIR");
        if (dir && !path.empty() && path.front() != '/')
            full_path = std::string(dir) + "/" + path;
        std::ofstream out(full_path);
        if (!out) throw std::runtime_error("cannot open output file " + full_path);
        out << payload;
    }
};

void add_output_flags(CLI::App* cmd, Output& out) {
    cmd->add_option("--format", out.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    cmd->add_option("--output", out.path,
                    "Output file (relative paths honor MZV_OUTPUT_DIR)");
}

std::string qstr(const Q& q) { return q.get_str(); }

IntComposition parse_comp(const std::string& text) {
    IntComposition k;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        k.push_back(std::stoi(item));
    }
    if (k.empty()) throw std::invalid_argument("empty composition: " + text);
    for (int x : k)
        if (x < 1) throw std::invalid_argument("composition parts must be >= 1");
    return k;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stoi(item));
    return out;
}

std::string comp_str(const IntComposition& k) {
    std::string s = "(";
    for (size_t i = 0; i < k.size(); ++i)
        s += (i ? "," : "") + std::to_string(k[i]);
    return s + ")";
}

// ------------------------------------------------------------ subcommands

int cmd_shuffle(const std::string& a, const std::string& b, const Output& out) {
    for (char ch : a + b)
        if (ch != 'x' && ch != 'y')
            throw std::invalid_argument("words must be over the letters x,y");
    Poly<WordXY> prod = shuffle(WordXY(a), WordXY(b));
    json terms = json::array();
    std::string text;
    for (const auto& [w, c] : prod) {
        terms.push_back({{"word", w}, {"coeff", qstr(c)}});
        text += (text.empty() ? "" : " + ") + qstr(c) + "*" + w;
    }
    out.emit({{"command", "shuffle"}, {"a", a}, {"b", b}, {"terms", terms}},
             a + " sh " + b + " = " + text + "\n");
    return 0;
}

int cmd_stuffle(const std::string& a, const std::string& b, const Output& out) {
    IntComposition ka = parse_comp(a), kb = parse_comp(b);
    Poly<IntComposition> prod = stuffle(ka, kb);
    json terms = json::array();
    std::string text;
    for (const auto& [k, c] : prod) {
        terms.push_back({{"composition", k}, {"coeff", qstr(c)}});
        text += (text.empty() ? "" : " + ") + qstr(c) + "*" + comp_str(k);
    }
    out.emit({{"command", "stuffle"}, {"a", a}, {"b", b}, {"terms", terms}},
             comp_str(ka) + " st " + comp_str(kb) + " = " + text + "\n");
    return 0;
}

int cmd_depth_dims(int weight, const Output& out) {
    auto [d1, d2] = depth_graded_dims(weight);
    out.emit({{"command", "depth-dims"},
              {"weight", weight},
              {"d1", d1},
              {"d2", d2}},
             "(" + std::to_string(d1) + ", " + std::to_string(d2) + ")\n");
    return 0;
}

int cmd_depth2_coeff(int i, int j, const Output& out) {
    Q c = depth_two_reduction(i, j);
    out.emit({{"command", "depth2-coeff"},
              {"i", i},
              {"j", j},
              {"coeff", qstr(c)}},
             qstr(c) + "\n");
    return 0;
}

int cmd_insertion_basis(int n, const Output& out) {
    auto basis = insertion_basis(n);
    json elems = json::array();
    std::string text;
    for (const auto& el : basis) {
        json words = json::array();
        std::string line;
        for (const auto& [w, c] : el.expansion) {
            std::string ws;
            for (size_t i = 0; i < w.size(); ++i)
                ws += (i ? " " : "") + std::to_string(w[i]);
            words.push_back({{"word", w}, {"coeff", qstr(c)}});
            line += (line.empty() ? "" : " + ") + qstr(c) + "*(" + ws + ")";
        }
        elems.push_back({{"desc", el.desc}, {"expansion", words}});
        text += el.desc + ": " + line + "\n";
    }
    out.emit({{"command", "insertion-basis"},
              {"n", n},
              {"dim", basis.size()},
              {"elements", elems}},
             "dim = " + std::to_string(basis.size()) + "\n" + text);
    return 0;
}

int cmd_dim_delta(int n, const Output& out) {
    long d = dim_delta(n);
    out.emit({{"command", "dim-delta"}, {"n", n}, {"dim", d}},
             std::to_string(d) + "\n");
    return 0;
}

int cmd_reduce(int n, const Output& out) {
    const Reduction& r = reduce_weight(n);
    json table = json::array();
    std::string text = "dim = " + std::to_string(r.dim) + "\nclasses:";
    for (const auto& cn : r.class_names) text += " [" + cn + "]";
    text += "\n";
    for (const auto& [name, row] : r.table) {
        json coords = json::array();
        std::string line = "  " + name + " ->";
        for (const auto& q : row) {
            coords.push_back(qstr(q));
            line += " " + qstr(q);
        }
        table.push_back({{"generator", name}, {"coords", coords}});
        text += line + "\n";
    }
    out.emit({{"command", "reduce"},
              {"n", n},
              {"dim", r.dim},
              {"classes", r.class_names},
              {"table", table}},
             text);
    return 0;
}

int cmd_identity(const std::string& comp, const Output& out) {
    IntComposition k = parse_comp(comp);
    const int weight = std::accumulate(k.begin(), k.end(), 0);
    const int n = weight + 3;
    if (n < 5 || n > 9)
        throw std::invalid_argument("identity: weight must be between 2 and 6");
    const Reduction& r = reduce_weight(n);
    auto coords = r.reduce(mzv_form(k));
    json jc = json::array();
    std::string text = "zeta" + comp_str(k) + " =";
    bool first = true;
    for (size_t i = 0; i < coords.size(); ++i) {
        jc.push_back(qstr(coords[i]));
        if (coords[i] != 0) {
            text += (first ? " " : " + ") + qstr(coords[i]) + " * " +
                    r.class_names[i];
            first = false;
        }
    }
    if (first) text += " 0";
    out.emit({{"command", "identity"},
              {"composition", k},
              {"weight", weight},
              {"classes", r.class_names},
              {"coords", jc}},
             text + "\n");
    return 0;
}

int cmd_numeric(const std::string& comp, const std::string& expected,
                long samples, unsigned long seed, const Output& out) {
    IntComposition k = parse_comp(comp);
    Poly<IntComposition> exp_poly;
    if (!expected.empty())
        poly_add_term(exp_poly, parse_comp(expected), Q(1));
    NumericResult r = numeric_check(mzv_form(k), exp_poly, samples, seed);
    std::ostringstream text;
    text << "integral of the " << comp_str(k) << " form: estimate "
         << r.estimate << ", expected " << r.expected << ", std error "
         << r.std_error << ", samples " << r.samples << " -> "
         << (r.pass ? "PASS" : "FAIL") << "\n";
    out.emit({{"command", "numeric"},
              {"composition", k},
              {"expected", expected},
              {"samples", r.samples},
              {"seed", seed},
              {"estimate", r.estimate},
              {"expected_value", r.expected},
              {"std_error", r.std_error},
              {"pass", r.pass}},
             text.str());
    return r.pass ? 0 : 1;
}

int cmd_partial_dim(int n, const std::string& divisors, const Output& out) {
    DivisorSet g = parse_divisor_set(n, divisors);
    long dim = cohom_dim(n, g);
    auto basis = cohom_basis(n, g);
    json jb = json::array();
    std::string text = "dim = " + std::to_string(dim) + "\n";
    for (const auto& p : basis) {
        json terms = json::array();
        std::string line;
        for (const auto& [cyc, c] : p) {
            terms.push_back(
                {{"polygon", polygon_to_string(cyc)}, {"coeff", qstr(c)}});
            line += (line.empty() ? "" : " + ") + qstr(c) + "*" +
                    polygon_to_string(cyc);
        }
        jb.push_back(terms);
        text += line + "\n";
    }
    out.emit({{"command", "partial-dim"},
              {"n", n},
              {"divisors", divisors},
              {"dim", dim},
              {"basis", jb}},
             text);
    return 0;
}

int cmd_pic_expand(int n, const std::string& order_text,
                   const std::string& divisor_text, const Output& out) {
    std::vector<int> order = parse_int_list(order_text);
    if (order.empty()) {
        order.resize(n);
        std::iota(order.begin(), order.end(), 1);
    }
    const NonAdjacentBasis basis = non_adjacent_basis(n, order);
    const BoundaryDivisor I = make_divisor(n, parse_int_list(divisor_text));
    const std::vector<Q> coeffs = expand(I, basis);

    // For display, prefer the smaller of the two complementary
    // representatives (fewest points, then lexicographic).
    auto display_subset = [n](const PointSet& s) {
        PointSet comp;
        auto it = s.begin();
        for (int z = 1; z <= n; ++z) {
            if (it != s.end() && *it == z) {
                ++it;
            } else {
                comp.push_back(z);
            }
        }
        if (comp.size() < s.size() ||
            (comp.size() == s.size() && comp < s))
            return comp;
        return s;
    };
    auto subset_str = [&](const PointSet& raw) {
        const PointSet s = display_subset(raw);
        std::string t = "{";
        for (size_t i = 0; i < s.size(); ++i)
            t += (i ? "," : "") + std::to_string(s[i]);
        return t + "}";
    };
    json terms = json::array();
    std::string text = "delta_" + subset_str(I.subset) + " =";
    bool first = true;
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) continue;
        terms.push_back({{"subset", basis.elements[i].divisor.subset},
                         {"coeff", qstr(coeffs[i])}});
        const std::string name =
            "delta_" + subset_str(basis.elements[i].divisor.subset);
        if (coeffs[i] == Q(1)) {
            text += std::string(first ? " " : " + ") + name;
        } else if (coeffs[i] == Q(-1)) {
            text += std::string(first ? " -" : " - ") + name;
        } else {
            text += std::string(first ? " " : " + ") + qstr(coeffs[i]) + "*" +
                    name;
        }
        first = false;
    }
    if (first) text += " 0";
    out.emit({{"command", "pic-expand"},
              {"n", n},
              {"order", order},
              {"divisor", I.subset},
              {"terms", terms}},
             text + "\n");
    return 0;
}

int cmd_verify_all(const std::string& level, const Output& out) {
    auto results = run_acceptance(level);
    json jr = json::array();
    std::string text;
    bool all = true;
    for (const auto& r : results) {
        jr.push_back({{"id", r.id},
                      {"name", r.name},
                      {"pass", r.pass},
                      {"seconds", r.seconds},
                      {"detail", r.detail}});
        char line[256];
        std::snprintf(line, sizeof line, "%s  criterion %2d  %-55s  %7.2fs  %s\n",
                      r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                      r.seconds, r.detail.c_str());
        text += line;
        all = all && r.pass;
    }
    text += std::string(all ? "SUCCESS" : "FAILURE") + ": " +
            std::to_string(results.size()) + " criteria at level " + level +
            "\n";
    out.emit({{"command", "verify-all"},
              {"level", level},
              {"pass", all},
              {"criteria", jr}},
             text);
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact combinatorics of multizeta cell-forms"};
    app.require_subcommand(1);

    Output out;

    std::string word_a, word_b;
    auto* sh = app.add_subcommand("shuffle", "Shuffle product of two xy-words");
    sh->add_option("--a", word_a, "First word over x,y")->required();
    sh->add_option("--b", word_b, "Second word over x,y")->required();
    add_output_flags(sh, out);

    std::string comp_a, comp_b;
    auto* st = app.add_subcommand("stuffle",
                                  "Stuffle product of two compositions");
    st->add_option("--a", comp_a, "First composition, e.g. 2,1")->required();
    st->add_option("--b", comp_b, "Second composition")->required();
    add_output_flags(st, out);

    int weight = 0;
    auto* dd = app.add_subcommand("depth-dims",
                                  "Depth-graded dimensions (d1, d2)");
    dd->add_option("--weight", weight, "Weight n")->required();
    add_output_flags(dd, out);

    int ci = 0, cj = 0;
    auto* d2 = app.add_subcommand("depth2-coeff",
                                  "Depth-two reduction coefficient");
    d2->add_option("--i", ci, "First index")->required();
    d2->add_option("--j", cj, "Second index")->required();
    add_output_flags(d2, out);

    int n_ib = 0;
    auto* ib = app.add_subcommand("insertion-basis",
                                  "Insertion basis of the relative cohomology");
    ib->add_option("--n", n_ib, "Number of marked points")->required();
    add_output_flags(ib, out);

    int n_dim = 0;
    auto* dl = app.add_subcommand("dim-delta",
                                  "Dimension of the relative cohomology");
    dl->add_option("--n", n_dim, "Number of marked points")->required();
    add_output_flags(dl, out);

    int n_red = 0;
    auto* rd = app.add_subcommand("reduce", "Weight-graded reduction table");
    rd->add_option("--n", n_red, "Number of marked points (5..9)")->required();
    add_output_flags(rd, out);

    std::string ident_k;
    auto* id = app.add_subcommand("identity",
                                  "Reduce a zeta value to residual classes");
    id->add_option("--k", ident_k, "Composition, e.g. 2,1")->required();
    add_output_flags(id, out);

    std::string num_k, num_expected;
    long samples = 1000000;
    unsigned long seed = 42;
    auto* nm = app.add_subcommand("numeric",
                                  "Monte Carlo check of a zeta integral");
    nm->add_option("--k", num_k, "Composition of the integrand")->required();
    nm->add_option("--expected", num_expected,
                   "Composition of the expected zeta value");
    nm->add_option("--samples", samples, "Sample count")->capture_default_str();
    nm->add_option("--seed", seed, "RNG seed")->capture_default_str();
    add_output_flags(nm, out);

    int n_pd = 0;
    std::string divisors;
    auto* pd = app.add_subcommand(
        "partial-dim", "Cohomology of a partial compactification");
    pd->add_option("--n", n_pd, "Number of marked points")->required();
    pd->add_option("--divisors", divisors,
                   "Semicolon-separated divisors, e.g. t1=t2;t2=t3;t1=t2=t3, "
                   "or 'delta'")
        ->required();
    add_output_flags(pd, out);

    int n_pic = 0;
    std::string pic_order, pic_divisor;
    auto* pe = app.add_subcommand("pic-expand",
                                  "Expand a boundary divisor in the "
                                  "non-adjacent basis");
    pe->add_option("--n", n_pic, "Number of marked points")->required();
    pe->add_option("--order", pic_order, "Dihedral order, e.g. 1,2,3,4,5,6");
    pe->add_option("--divisor", pic_divisor, "Divisor subset, e.g. 1,2,3")
        ->required();
    add_output_flags(pe, out);

    std::string level = "quick";
    auto* va = app.add_subcommand("verify-all", "Run the acceptance suite");
    va->add_option("--level", level, "quick, stretch-only, or full")
        ->check(CLI::IsMember({"quick", "stretch-only", "full"}))
        ->capture_default_str();
    add_output_flags(va, out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the offending flag / help text
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (sh->parsed()) return cmd_shuffle(word_a, word_b, out);
        if (st->parsed()) return cmd_stuffle(comp_a, comp_b, out);
        if (dd->parsed()) return cmd_depth_dims(weight, out);
        if (d2->parsed()) return cmd_depth2_coeff(ci, cj, out);
        if (ib->parsed()) return cmd_insertion_basis(n_ib, out);
        if (dl->parsed()) return cmd_dim_delta(n_dim, out);
        if (rd->parsed()) return cmd_reduce(n_red, out);
        if (id->parsed()) return cmd_identity(ident_k, out);
        if (nm->parsed())
            return cmd_numeric(num_k, num_expected, samples, seed, out);
        if (pd->parsed()) return cmd_partial_dim(n_pd, divisors, out);
        if (pe->parsed())
            return cmd_pic_expand(n_pic, pic_order, pic_divisor, out);
        if (va->parsed()) return cmd_verify_all(level, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
