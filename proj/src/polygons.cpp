#include <mzv/polygons.hpp>

#include <algorithm>
#include <array>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mzv {

std::string label_name(Label l) {
    if (l < 1000) return std::to_string(l);
    if (l == LBL_D) return "d";
    if (l == LBL_E) return "e";
    if (l == LBL_F) return "f";
    if (l == LBL_ZERO) return "0";
    if (l == LBL_ONE) return "1";
    if (l == LBL_INF) return "inf";
    if (l > 2100 && l < 2500) return "t" + std::to_string(l - 2100);
    return "?" + std::to_string(l);
}

Label parse_label(const std::string& s) {
    if (s == "d") return LBL_D;
    if (s == "e") return LBL_E;
    if (s == "f") return LBL_F;
    if (s == "0") return LBL_ZERO;
    if (s == "1") return LBL_ONE;
    if (s == "inf" || s == "oo") return LBL_INF;
    if (s.size() > 1 && s[0] == 't') return tpt(std::stoi(s.substr(1)));
    if (s.size() > 1 && s[0] == '#') return std::stoi(s.substr(1));
    if (!s.empty() && std::all_of(s.begin(), s.end(),
                                  [](char c) { return c >= '0' && c <= '9'; }))
        return std::stoi(s);  // abstract label (0 and 1 are marked points)
    throw std::invalid_argument("parse_label: bad label '" + s + "'");
}

Canon canonical_cycle(const std::vector<Label>& seq) {
    std::size_t n = seq.size();
    if (n == 0) return {{}, 1};
    auto rotate_min = [n](const std::vector<Label>& v) {
        std::size_t at =
            std::min_element(v.begin(), v.end()) - v.begin();
        std::vector<Label> r;
        r.reserve(n);
        for (std::size_t i = 0; i < n; ++i) r.push_back(v[(at + i) % n]);
        return r;
    };
    std::vector<Label> fwd = rotate_min(seq);
    std::vector<Label> rev(seq.rbegin(), seq.rend());
    rev = rotate_min(rev);
    if (rev < fwd) return {rev, (n % 2 == 0) ? 1 : -1};
    return {fwd, 1};
}

void add_polygon(PolySum& p, const std::vector<Label>& seq, const Q& coeff) {
    Canon c = canonical_cycle(seq);
    poly_add_term(p, c.cycle, coeff * c.sign);
}

PolySum relabel(const PolySum& p, const std::map<Label, Label>& perm) {
    PolySum out;
    for (const auto& [cyc, coeff] : p) {
        std::vector<Label> seq;
        seq.reserve(cyc.size());
        for (Label l : cyc) {
            auto it = perm.find(l);
            seq.push_back(it == perm.end() ? l : it->second);
        }
        add_polygon(out, seq, coeff);
    }
    return out;
}

Q eval_cell(const Cycle& gamma, const std::map<Label, Q>& vals) {
    std::size_t n = gamma.size();
    auto value = [&vals](Label l) -> const Q& {
        auto it = vals.find(l);
        if (it == vals.end())
            throw std::invalid_argument("eval_cell: no value for label " +
                                        label_name(l));
        return it->second;
    };
    Q denom = 1;
    auto inf_it = std::find(gamma.begin(), gamma.end(), LBL_INF);
    if (inf_it != gamma.end()) {
        // Rotate infinity to the end and drop both adjacent factors.
        std::size_t at = inf_it - gamma.begin();
        std::vector<Label> w;
        for (std::size_t i = 1; i < n; ++i) w.push_back(gamma[(at + i) % n]);
        for (std::size_t i = 0; i + 2 < n; ++i)
            denom *= value(w[i + 1]) - value(w[i]);
    } else {
        for (std::size_t i = 0; i < n; ++i)
            denom *= value(gamma[(i + 1) % n]) - value(gamma[i]);
    }
    if (denom == 0)
        throw std::invalid_argument("eval_cell: coincident coordinates");
    return Q(1) / denom;
}

Q eval_cell(const PolySum& p, const std::map<Label, Q>& vals) {
    Q total = 0;
    for (const auto& [cyc, coeff] : p) total += coeff * eval_cell(cyc, vals);
    return total;
}

bool is_consecutive_block(const Cycle& gamma, const std::vector<Label>& block) {
    std::size_t n = gamma.size(), b = block.size();
    if (b == 0 || b > n) return false;
    std::vector<Label> sorted = block;
    std::sort(sorted.begin(), sorted.end());
    auto in_block = [&sorted](Label l) {
        return std::binary_search(sorted.begin(), sorted.end(), l);
    };
    // Find a start position whose next b entries are exactly the block.
    for (std::size_t s = 0; s < n; ++s) {
        if (!in_block(gamma[s])) continue;
        if (in_block(gamma[(s + n - 1) % n])) continue;  // not a run start
        std::size_t run = 0;
        while (run < n && in_block(gamma[(s + run) % n])) ++run;
        return run == b;
    }
    return false;
}

std::vector<std::vector<Label>> chords(const Cycle& gamma) {
    std::size_t n = gamma.size();
    Label maxl = *std::max_element(gamma.begin(), gamma.end());
    std::vector<std::vector<Label>> out;
    std::set<std::vector<Label>> seen;
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t len = 2; len <= n - 2; ++len) {
            std::vector<Label> block;
            for (std::size_t i = 0; i < len; ++i)
                block.push_back(gamma[(s + i) % n]);
            std::sort(block.begin(), block.end());
            if (std::binary_search(block.begin(), block.end(), maxl)) {
                // Report the complementary side.
                std::vector<Label> comp;
                for (Label l : gamma)
                    if (!std::binary_search(block.begin(), block.end(), l))
                        comp.push_back(l);
                std::sort(comp.begin(), comp.end());
                block = comp;
            }
            if (seen.insert(block).second) out.push_back(block);
        }
    std::sort(out.begin(), out.end());
    return out;
}

Poly<CyclePair> residue_p(const PolySum& eta, const std::vector<Label>& block,
                          Label e) {
    std::vector<Label> sorted_block = block;
    std::sort(sorted_block.begin(), sorted_block.end());
    auto in_block = [&sorted_block](Label l) {
        return std::binary_search(sorted_block.begin(), sorted_block.end(), l);
    };
    Poly<CyclePair> out;
    for (const auto& [cyc, coeff] : eta) {
        std::size_t n = cyc.size(), b = sorted_block.size();
        // Locate the run start.
        std::size_t start = n;
        for (std::size_t s = 0; s < n; ++s)
            if (in_block(cyc[s]) && !in_block(cyc[(s + n - 1) % n])) {
                start = s;
                break;
            }
        if (start == n) continue;
        std::size_t run = 0;
        while (run < n && in_block(cyc[(start + run) % n])) ++run;
        if (run != b) continue;  // not consecutive in this term
        std::vector<Label> first, second;
        for (std::size_t i = 0; i < b; ++i) first.push_back(cyc[(start + i) % n]);
        first.push_back(e);
        for (std::size_t i = b; i < n; ++i) second.push_back(cyc[(start + i) % n]);
        second.push_back(e);
        Canon c1 = canonical_cycle(first);
        Canon c2 = canonical_cycle(second);
        poly_add_term(out, {c1.cycle, c2.cycle}, coeff * c1.sign * c2.sign);
    }
    return out;
}

PolySum shuffle_wrt_point(const std::vector<Label>& A,
                          const std::vector<Label>& B, Label e) {
    PolySum out;
    for (const auto& [w, c] : shuffle(A, B)) {
        std::vector<Label> seq = w;
        seq.push_back(e);
        add_polygon(out, seq, c);
    }
    return out;
}

namespace {

// Rotate cycle so that it reads (E[0], arc0, E[1], arc1, E[2], arc2) and
// return the arcs; expects the members of E to appear in this cyclic
// order in the cycle.
bool split_arcs(const Cycle& g, const std::vector<Label>& E,
                std::array<std::vector<Label>, 3>& arcs) {
    std::size_t n = g.size();
    std::size_t at = std::find(g.begin(), g.end(), E[0]) - g.begin();
    int arc = -1;
    for (std::size_t i = 0; i < n; ++i) {
        Label l = g[(at + i) % n];
        if (l == E[0]) {
            if (i != 0) return false;
            arc = 0;
            arcs[0].clear();
        } else if (l == E[1]) {
            if (arc != 0) return false;
            arc = 1;
            arcs[1].clear();
        } else if (l == E[2]) {
            if (arc != 1) return false;
            arc = 2;
            arcs[2].clear();
        } else {
            arcs[arc].push_back(l);
        }
    }
    return arc == 2;
}

}  // namespace

PolySum shuffle_cyclic(const Cycle& g1, const Cycle& g2) {
    std::vector<Label> s1(g1.begin(), g1.end()), s2(g2.begin(), g2.end());
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    std::vector<Label> E;
    std::set_intersection(s1.begin(), s1.end(), s2.begin(), s2.end(),
                          std::back_inserter(E));
    if (E.size() != 3)
        throw std::invalid_argument("shuffle_cyclic: intersection must have 3 labels");

    // Orientation of g1 relative to the standard (ascending) order of E.
    std::array<std::vector<Label>, 3> arcs1, arcs2;
    int eps = 1;
    std::vector<Label> Eord = E;  // ascending
    if (!split_arcs(g1, Eord, arcs1)) {
        std::swap(Eord[1], Eord[2]);  // the other cyclic order on E
        eps = -1;
        if (!split_arcs(g1, Eord, arcs1))
            throw std::logic_error("shuffle_cyclic: arc split failed");
    }
    // Match g2 to g1's orientation, possibly reversing at cost (-1)^{|T2|}.
    Q factor = eps;
    if (!split_arcs(g2, Eord, arcs2)) {
        Cycle rev(g2.rbegin(), g2.rend());
        if (!split_arcs(rev, Eord, arcs2))
            throw std::logic_error("shuffle_cyclic: arc split failed on reverse");
        if (g2.size() % 2 == 1) factor = -factor;
    }

    PolySum out;
    for (const auto& [w0, c0] : shuffle(arcs1[0], arcs2[0]))
        for (const auto& [w1, c1] : shuffle(arcs1[1], arcs2[1]))
            for (const auto& [w2, c2] : shuffle(arcs1[2], arcs2[2])) {
                std::vector<Label> seq;
                seq.push_back(Eord[0]);
                seq.insert(seq.end(), w0.begin(), w0.end());
                seq.push_back(Eord[1]);
                seq.insert(seq.end(), w1.begin(), w1.end());
                seq.push_back(Eord[2]);
                seq.insert(seq.end(), w2.begin(), w2.end());
                add_polygon(out, seq, factor * c0 * c1 * c2);
            }
    return out;
}

PolySum rewrite_01_cycle(const Cycle& gamma, Label e, Label one) {
    std::size_t n = gamma.size();
    std::size_t at = std::find(gamma.begin(), gamma.end(), e) - gamma.begin();
    if (at == n)
        throw std::invalid_argument("rewrite_01: polygon lacks the point e");
    // Word with e removed, read starting after e.
    std::vector<Label> w;
    for (std::size_t i = 1; i < n; ++i) w.push_back(gamma[(at + i) % n]);
    std::size_t pos = std::find(w.begin(), w.end(), one) - w.begin();
    if (pos == w.size())
        throw std::invalid_argument("rewrite_01: polygon lacks the letter one");
    std::vector<Label> u(w.begin(), w.begin() + pos);
    std::vector<Label> v(w.begin() + pos + 1, w.end());
    PolySum out;
    if (u.empty()) {
        std::vector<Label> seq = w;
        seq.push_back(e);
        add_polygon(out, seq, Q(1));
        return out;
    }
    std::vector<Label> ru(u.rbegin(), u.rend());
    Q sign = (u.size() % 2 == 0) ? 1 : -1;
    for (const auto& [s, c] : shuffle(ru, v)) {
        std::vector<Label> seq;
        seq.push_back(one);
        seq.insert(seq.end(), s.begin(), s.end());
        seq.push_back(e);
        add_polygon(out, seq, sign * c);
    }
    return out;
}

PolySum rewrite_01(const PolySum& p, Label e, Label one) {
    PolySum out;
    for (const auto& [cyc, coeff] : p)
        poly_add(out, rewrite_01_cycle(cyc, e, one), coeff);
    return out;
}

std::vector<Cycle> basis_01(std::vector<Label> others, Label e, Label one) {
    std::sort(others.begin(), others.end());
    std::vector<Cycle> out;
    do {
        std::vector<Label> seq;
        seq.push_back(one);
        seq.insert(seq.end(), others.begin(), others.end());
        seq.push_back(e);
        out.push_back(canonical_cycle(seq).cycle);
    } while (std::next_permutation(others.begin(), others.end()));
    return out;
}

std::vector<Label> word_01(const Cycle& gamma, Label e, Label one, int* sign) {
    std::size_t n = gamma.size();
    std::size_t at = std::find(gamma.begin(), gamma.end(), e) - gamma.begin();
    std::vector<Label> w;
    for (std::size_t i = 1; i < n; ++i) w.push_back(gamma[(at + i) % n]);
    int s = 1;
    if (w.front() != one) {
        std::reverse(w.begin(), w.end());
        s = (n % 2 == 0) ? 1 : -1;
    }
    if (w.front() != one)
        throw std::invalid_argument("word_01: not a 01-basis polygon");
    if (sign) *sign = s;
    return std::vector<Label>(w.begin() + 1, w.end());
}

Cycle standard_cell(int ell) {
    std::vector<Label> seq;
    seq.push_back(LBL_ZERO);
    for (int i = 1; i <= ell; ++i) seq.push_back(tpt(i));
    seq.push_back(LBL_ONE);
    seq.push_back(LBL_INF);
    return seq;
}

std::vector<Label> marked_labels(int ell) {
    std::vector<Label> out{LBL_ZERO, LBL_ONE};
    for (int i = 1; i <= ell; ++i) out.push_back(tpt(i));
    out.push_back(LBL_INF);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Label> parse_polygon(const std::string& text) {
    std::string body = text;
    for (char& ch : body)
        if (ch == '(' || ch == ')' || ch == '[' || ch == ']' || ch == ',')
            ch = ' ';
    std::istringstream in(body);
    std::vector<Label> seq;
    std::string tok;
    while (in >> tok) seq.push_back(parse_label(tok));
    return seq;
}

std::string polygon_to_string(const Cycle& gamma, char open, char close) {
    std::string out(1, open);
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        if (i) out += ' ';
        out += label_name(gamma[i]);
    }
    out += close;
    return out;
}

}  // namespace mzv
