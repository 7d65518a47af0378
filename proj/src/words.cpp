#include <mzv/linalg.hpp>
#include <mzv/words.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

namespace mzv {

WordXY composition_to_word(const IntComposition& k) {
    WordXY w;
    for (int part : k) {
        w.append(part - 1, 'x');
        w.push_back('y');
    }
    return w;
}

std::optional<IntComposition> word_to_composition(const WordXY& w) {
    if (w.empty() || w.back() != 'y') return std::nullopt;
    IntComposition k;
    int run = 0;
    for (char c : w) {
        if (c == 'x') {
            ++run;
        } else {
            k.push_back(run + 1);
            run = 0;
        }
    }
    return k;
}

int depth(const WordXY& w) {
    return static_cast<int>(std::count(w.begin(), w.end(), 'y'));
}

Poly<IntComposition> stuffle(const IntComposition& a, const IntComposition& b) {
    if (a.empty()) return {{b, Q(1)}};
    if (b.empty()) return {{a, Q(1)}};
    IntComposition abar(a.begin() + 1, a.end());
    IntComposition bbar(b.begin() + 1, b.end());
    Poly<IntComposition> out;
    auto prepend = [&out](int head, const Poly<IntComposition>& p) {
        for (const auto& [w, c] : p) {
            IntComposition t;
            t.reserve(w.size() + 1);
            t.push_back(head);
            t.insert(t.end(), w.begin(), w.end());
            poly_add_term(out, t, c);
        }
    };
    prepend(a[0], stuffle(abar, b));
    prepend(b[0], stuffle(a, bbar));
    prepend(a[0] + b[0], stuffle(abar, bbar));
    return out;
}

Poly<WordY> pi_y(const Poly<WordXY>& f) {
    Poly<WordY> out;
    for (const auto& [w, c] : f) {
        auto k = word_to_composition(w);
        if (k) poly_add_term(out, static_cast<WordY>(*k), c);
        // Corrective term from (f|x^{n-1}y): (-1)^{n-1}/n * y_1^n.
        if (k && k->size() == 1) {
            int n = (*k)[0];
            if (n >= 2) {
                WordY ones(n, 1);
                Q corr = c * Q((n % 2 == 0) ? -1 : 1, n);
                poly_add_term(out, ones, corr);
            }
        }
    }
    return out;
}

std::vector<WordXY> lyndon_words_xy(int length) {
    // Duval's algorithm over the two-letter alphabet {x,y}.
    std::vector<WordXY> result;
    std::string w = "x";
    while (!w.empty()) {
        if (static_cast<int>(w.size()) == length) result.push_back(w);
        // Extend periodically to the target length, then increment.
        std::string t = w;
        while (static_cast<int>(t.size()) < length)
            t.push_back(t[t.size() % w.size()]);
        while (!t.empty() && t.back() == 'y') t.pop_back();
        if (!t.empty()) t.back() = 'y';
        w = t;
    }
    return result;
}

long witt_dim(int n, int r) {
    // Moebius function via trial factorization of each divisor.
    auto mobius = [](int m) {
        int mu = 1;
        for (int p = 2; p * p <= m; ++p) {
            if (m % p == 0) {
                m /= p;
                if (m % p == 0) return 0;
                mu = -mu;
            }
        }
        if (m > 1) mu = -mu;
        return mu;
    };
    long total = 0;
    for (int d = 1; d <= n; ++d) {
        if (n % d) continue;
        long pw = 1;
        for (int i = 0; i < n / d; ++i) pw *= r;
        total += mobius(d) * pw;
    }
    return total / n;
}

std::pair<WordXY, WordXY> standard_factorization(const WordXY& w) {
    if (w.size() < 2)
        throw std::invalid_argument("standard_factorization: length >= 2 required");
    std::size_t best = 1;
    for (std::size_t i = 2; i < w.size(); ++i)
        if (w.compare(i, std::string::npos, w, best, std::string::npos) < 0)
            best = i;
    return {w.substr(0, best), w.substr(best)};
}

Poly<WordXY> concat(const Poly<WordXY>& f, const Poly<WordXY>& g) {
    Poly<WordXY> out;
    for (const auto& [a, ca] : f)
        for (const auto& [b, cb] : g) poly_add_term(out, a + b, ca * cb);
    return out;
}

Poly<WordXY> lie_bracket(const Poly<WordXY>& f, const Poly<WordXY>& g) {
    Poly<WordXY> out = concat(f, g);
    poly_add(out, concat(g, f), Q(-1));
    return out;
}

Poly<WordXY> lyndon_lie(const WordXY& w) {
    if (!is_lyndon(w))
        throw std::invalid_argument("lyndon_lie: not a Lyndon word: " + w);
    if (w.size() == 1) return {{w, Q(1)}};
    auto [u, v] = standard_factorization(w);
    return lie_bracket(lyndon_lie(u), lyndon_lie(v));
}

Poly<WordXY> derivation(const Poly<WordXY>& f, const Poly<WordXY>& g) {
    Poly<WordXY> out;
    for (const auto& [w, cw] : g) {
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (w[i] != 'y') continue;
            WordXY left = w.substr(0, i);
            WordXY right = w.substr(i + 1);
            for (const auto& [u, cu] : f) {
                // y -> [y,f] = y u - u y
                poly_add_term(out, left + "y" + u + right, cw * cu);
                poly_add_term(out, left + u + "y" + right, -cw * cu);
            }
        }
    }
    return out;
}

Poly<WordXY> poisson_bracket(const Poly<WordXY>& f, const Poly<WordXY>& g) {
    Poly<WordXY> out = lie_bracket(f, g);
    poly_add(out, derivation(f, g));
    poly_add(out, derivation(g, f), Q(-1));
    return out;
}

namespace {

std::vector<WordXY> all_words_xy(int length) {
    std::vector<WordXY> out;
    for (int mask = 0; mask < (1 << length); ++mask) {
        WordXY w;
        for (int i = 0; i < length; ++i) w.push_back((mask >> i & 1) ? 'y' : 'x');
        out.push_back(w);
    }
    return out;
}

std::vector<IntComposition> compositions_of(int n) {
    std::vector<IntComposition> out;
    if (n == 0) {
        out.push_back({});
        return out;
    }
    for (int head = 1; head <= n; ++head)
        for (const auto& tail : compositions_of(n - head)) {
            IntComposition k;
            k.push_back(head);
            k.insert(k.end(), tail.begin(), tail.end());
            out.push_back(k);
        }
    return out;
}

// Sum of (g|v) over all terms v (with multiplicity) of the stuffle u1*u2.
Q stuffle_pair_sum(const Poly<WordY>& g, const IntComposition& u1,
                   const IntComposition& u2) {
    Q total = 0;
    for (const auto& [v, c] : stuffle(u1, u2))
        total += c * poly_coeff(g, static_cast<WordY>(v));
    return total;
}

}  // namespace

DoubleShuffleReport check_double_shuffle(const Poly<WordXY>& f) {
    DoubleShuffleReport rep;
    if (f.empty()) return rep;
    int n = weight(f.begin()->first);

    for (int la = 1; la <= n - la; ++la) {
        auto as = all_words_xy(la);
        auto bs = all_words_xy(n - la);
        for (const auto& u : as)
            for (const auto& v : bs) {
                if (la == n - la && v < u) continue;
                Q total = 0;
                for (const auto& [w, c] : shuffle(u, v))
                    total += c * poly_coeff(f, w);
                if (total != 0) rep.shuffle_violations.emplace_back(u, v);
            }
    }

    Poly<WordY> g = pi_y(f);
    for (int wa = 1; wa <= n - wa; ++wa) {
        auto as = compositions_of(wa);
        auto bs = compositions_of(n - wa);
        for (const auto& u : as)
            for (const auto& v : bs) {
                if (wa == n - wa && v < u) continue;
                if (stuffle_pair_sum(g, u, v) != 0)
                    rep.stuffle_violations.emplace_back(u, v);
            }
    }
    return rep;
}

Poly<WordXY> ds_element(int n) {
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("ds_element: odd weight >= 3 required");
    std::vector<WordXY> lyndon = lyndon_words_xy(n);
    std::vector<Poly<WordXY>> lie;
    lie.reserve(lyndon.size());
    for (const auto& w : lyndon) lie.push_back(lyndon_lie(w));

    // Unknowns: coefficients over the Lyndon-Lie basis.  Lie elements
    // satisfy the shuffle conditions automatically, so only the stuffle
    // conditions constrain them.  Each condition is a composition pair.
    struct Condition {
        IntComposition u, v;
    };
    std::vector<Condition> conds;
    {
        auto comps_of = [](int m) {
            std::vector<IntComposition> out;
            std::function<void(int, IntComposition&)> rec =
                [&](int rem, IntComposition& cur) {
                    if (rem == 0) {
                        out.push_back(cur);
                        return;
                    }
                    for (int h = 1; h <= rem; ++h) {
                        cur.push_back(h);
                        rec(rem - h, cur);
                        cur.pop_back();
                    }
                };
            IntComposition cur;
            rec(m, cur);
            return out;
        };
        for (int wa = 1; wa <= n - wa; ++wa)
            for (const auto& u : comps_of(wa))
                for (const auto& v : comps_of(n - wa)) {
                    if (wa == n - wa && v < u) continue;
                    conds.push_back({u, v});
                }
    }

    // Matrix: row per condition, column per Lyndon word.
    QMatrix m(static_cast<int>(conds.size()), static_cast<int>(lyndon.size()));
    for (int col = 0; col < static_cast<int>(lyndon.size()); ++col) {
        Poly<WordY> g = pi_y(lie[col]);
        for (int row = 0; row < static_cast<int>(conds.size()); ++row) {
            Q s = stuffle_pair_sum(g, conds[row].u, conds[row].v);
            if (s != 0) m.set(row, col, s);
        }
    }
    auto kernel = nullspace(m);
    if (kernel.size() != 1)
        throw std::runtime_error("ds_element: unexpected solution dimension " +
                                 std::to_string(kernel.size()));
    Poly<WordXY> f;
    for (int col = 0; col < static_cast<int>(lyndon.size()); ++col)
        poly_add(f, lie[col], kernel[0][col]);
    Q lead = poly_coeff(f, WordXY(n - 1, 'x') + "y");
    if (lead == 0) throw std::runtime_error("ds_element: depth-1 part vanishes");
    return poly_scaled(f, Q(1) / lead);
}

}  // namespace mzv
