#include <mzv/insertion.hpp>
#include <mzv/words.hpp>

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mzv {

bool has_interval_window(const IntWord& w, int min_len, int max_len) {
    int n = static_cast<int>(w.size());
    for (int i = 0; i < n; ++i) {
        int lo = w[i], hi = w[i];
        for (int j = i + 1; j < n; ++j) {
            lo = std::min(lo, w[j]);
            hi = std::max(hi, w[j]);
            int len = j - i + 1;
            if (len > max_len) break;
            if (len >= min_len && hi - lo == len - 1) return true;
        }
    }
    return false;
}

bool is_convergent_word(const IntWord& w) {
    return !has_interval_window(w, 2, static_cast<int>(w.size()) - 2);
}

bool is_convergent_factor(const IntWord& w) {
    return !has_interval_window(w, 2, static_cast<int>(w.size()));
}

bool is_special_convergent(const IntWord& w) {
    return !has_interval_window(w, 2, static_cast<int>(w.size()) - 1);
}

std::vector<IntWord> special_convergent_words(int m) {
    std::vector<IntWord> out;
    if (m < 2) return out;
    IntWord w(m);
    std::iota(w.begin(), w.end(), 1);
    do {
        bool adj = false;
        for (int i = 0; i + 1 < m; ++i)
            if (w[i] == 1 && w[i + 1] == m) adj = true;
        if (adj && is_special_convergent(w)) out.push_back(w);
    } while (std::next_permutation(w.begin(), w.end()));
    return out;
}

long count_special_convergent(int n) {
    return static_cast<long>(special_convergent_words(n - 1).size());
}

std::vector<IntWord> convergent_lyndon_words(const std::vector<int>& B) {
    std::vector<IntWord> out;
    if (B.empty()) return out;
    IntWord rest(B.begin() + 1, B.end());  // B sorted: min letter leads
    std::sort(rest.begin(), rest.end());
    do {
        IntWord w;
        w.push_back(B.front());
        w.insert(w.end(), rest.begin(), rest.end());
        if (is_convergent_factor(w)) out.push_back(w);
    } while (std::next_permutation(rest.begin(), rest.end()));
    return out;
}

namespace {

// Set partitions of {1..k} into >= 2 blocks, blocks listed in order of
// their minima, elements ascending within a block.
void set_partitions(int k, std::vector<std::vector<int>>& blocks, int next,
                    std::vector<std::vector<std::vector<int>>>& out) {
    if (next > k) {
        if (blocks.size() >= 2) out.push_back(blocks);
        return;
    }
    // Index, not iterate: the recursion may grow `blocks` and reallocate.
    for (std::size_t i = 0, sz = blocks.size(); i < sz; ++i) {
        blocks[i].push_back(next);
        set_partitions(k, blocks, next + 1, out);
        blocks[i].pop_back();
    }
    blocks.push_back({next});
    set_partitions(k, blocks, next + 1, out);
    blocks.pop_back();
}

Poly<IntWord> concat_poly(const Poly<IntWord>& a, const Poly<IntWord>& b) {
    Poly<IntWord> out;
    for (const auto& [wa, ca] : a)
        for (const auto& [wb, cb] : b) {
            IntWord w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            poly_add_term(out, w, ca * cb);
        }
    return out;
}

std::string renumber_desc(const std::string& desc, int off) {
    std::istringstream in(desc);
    std::string tok, out;
    while (in >> tok) {
        if (!out.empty()) out += ' ';
        if (!tok.empty() && (std::isdigit(tok[0]) != 0))
            out += std::to_string(std::stoi(tok) + off);
        else
            out += tok;
    }
    return out;
}

Poly<IntWord> renumber_poly(const Poly<IntWord>& p, int off) {
    Poly<IntWord> out;
    for (const auto& [w, c] : p) {
        IntWord r = w;
        for (int& l : r) l += off;
        poly_add_term(out, r, c);
    }
    return out;
}

// Per-letter substitutions: letter l of the framing alphabet {1..k} is
// replaced by slots[l] (a word polynomial with a description).
struct Slot {
    std::string desc;  // empty for a plain letter
    Poly<IntWord> poly;
};

Poly<IntWord> splice_word(const IntWord& w, const std::vector<Slot>& slots) {
    Poly<IntWord> acc{{{}, Q(1)}};
    for (int l : w) acc = concat_poly(acc, slots[l].poly);
    return acc;
}

std::string splice_desc(const IntWord& w, const std::vector<Slot>& slots) {
    std::string out;
    for (int l : w) {
        if (!out.empty()) out += ' ';
        out += slots[l].desc;
    }
    return out;
}

// Enumerate v-assignments: each free letter gets v >= 1, fixed letters
// get v = 1, total extra distributed equals m - k.
void compositions(int extra, int nfree, std::vector<int>& cur,
                  std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == nfree) {
        if (extra == 0) out.push_back(cur);
        return;
    }
    for (int give = 0; give <= extra; ++give) {
        cur.push_back(give);
        compositions(extra - give, nfree, cur, out);
        cur.pop_back();
    }
}

// Build the slot table for a framing on {1..k} with letter sizes v[1..k]
// and one choice of inserted element per letter with v > 1, then hand
// each complete table to sink.
template <class Sink>
void for_each_slot_table(int k, const std::vector<int>& v, Sink&& sink) {
    std::vector<int> offset(k + 1, 0);
    // Letter l renumbers to the block offset[l-1]+1 .. offset[l].
    for (int l = 1; l <= k; ++l) offset[l] = offset[l - 1] + v[l - 1];
    std::vector<Slot> slots(k + 1);
    std::vector<int> big;  // letters with v > 1
    for (int l = 1; l <= k; ++l) {
        int off = offset[l - 1];
        if (v[l - 1] == 1) {
            slots[l].desc = std::to_string(off + 1);
            slots[l].poly = Poly<IntWord>{{{off + 1}, Q(1)}};
        } else {
            big.push_back(l);
        }
    }
    // Cartesian product over the choices for the big letters.
    std::vector<std::size_t> idx(big.size(), 0);
    std::vector<const std::vector<InsertionElement>*> pools;
    for (int l : big) pools.push_back(&lyndon_insertion_shuffles(v[l - 1]));
    while (true) {
        for (std::size_t j = 0; j < big.size(); ++j) {
            int l = big[j];
            const InsertionElement& el = (*pools[j])[idx[j]];
            int off = offset[l - 1];
            slots[l].desc = "( " + renumber_desc(el.desc, off) + " )";
            slots[l].poly = renumber_poly(el.expansion, off);
        }
        sink(slots);
        std::size_t j = 0;
        for (; j < big.size(); ++j) {
            if (++idx[j] < pools[j]->size()) break;
            idx[j] = 0;
        }
        if (j == big.size()) break;
        if (big.empty()) break;
    }
}

}  // namespace

std::vector<std::vector<IntWord>> convergent_lyndon_shuffles(int k) {
    std::vector<std::vector<std::vector<int>>> parts;
    std::vector<std::vector<int>> blocks;
    set_partitions(k, blocks, 1, parts);
    std::vector<std::vector<IntWord>> out;
    for (const auto& p : parts) {
        std::vector<std::vector<IntWord>> choices;
        bool ok = true;
        for (const auto& b : p) {
            auto ws = convergent_lyndon_words(b);
            if (ws.empty()) {
                ok = false;
                break;
            }
            choices.push_back(std::move(ws));
        }
        if (!ok) continue;
        std::vector<std::size_t> idx(p.size(), 0);
        while (true) {
            std::vector<IntWord> factors;
            for (std::size_t j = 0; j < p.size(); ++j)
                factors.push_back(choices[j][idx[j]]);
            out.push_back(std::move(factors));
            std::size_t j = 0;
            for (; j < p.size(); ++j) {
                if (++idx[j] < choices[j].size()) break;
                idx[j] = 0;
            }
            if (j == p.size()) break;
        }
    }
    return out;
}

const std::vector<InsertionElement>& lyndon_insertion_shuffles(int m) {
    static std::map<int, std::vector<InsertionElement>> cache;
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    std::vector<InsertionElement> out;
    if (m >= 2) {
        for (int k = 2; k <= m; ++k) {
            for (const auto& factors : convergent_lyndon_shuffles(k)) {
                std::vector<bool> leftmost(k + 1, false);
                for (const auto& f : factors) leftmost[f.front()] = true;
                std::vector<int> free_letters;
                for (int l = 1; l <= k; ++l)
                    if (!leftmost[l]) free_letters.push_back(l);
                if (k == m) {
                    // No insertions: the convergent Lyndon shuffle itself.
                    Poly<IntWord> exp{{{}, Q(1)}};
                    std::string desc;
                    for (const auto& f : factors) {
                        Poly<IntWord> fp{{f, Q(1)}};
                        exp = shuffle(exp, fp);
                        if (!desc.empty()) desc += " sh ";
                        for (std::size_t i = 0; i < f.size(); ++i) {
                            if (i) desc += ' ';
                            desc += std::to_string(f[i]);
                        }
                    }
                    out.push_back({desc, std::move(exp)});
                    continue;
                }
                if (free_letters.empty()) continue;
                std::vector<std::vector<int>> extras;
                std::vector<int> cur;
                compositions(m - k, static_cast<int>(free_letters.size()),
                             cur, extras);
                for (const auto& extra : extras) {
                    std::vector<int> v(k, 1);
                    for (std::size_t j = 0; j < free_letters.size(); ++j)
                        v[free_letters[j] - 1] += extra[j];
                    for_each_slot_table(k, v, [&](const std::vector<Slot>& slots) {
                        Poly<IntWord> exp{{{}, Q(1)}};
                        std::string desc;
                        for (const auto& f : factors) {
                            exp = shuffle(exp, splice_word(f, slots));
                            if (!desc.empty()) desc += " sh ";
                            desc += splice_desc(f, slots);
                        }
                        out.push_back({desc, std::move(exp)});
                    });
                }
            }
        }
    }
    return cache.emplace(m, std::move(out)).first->second;
}

std::vector<InsertionElement> lyndon_insertion_words(int m) {
    std::vector<InsertionElement> out;
    if (m < 4) return out;
    for (int k = 4; k <= m; ++k) {
        for (const auto& w : special_convergent_words(k)) {
            if (k == m) {
                std::string desc;
                for (std::size_t i = 0; i < w.size(); ++i) {
                    if (i) desc += ' ';
                    desc += std::to_string(w[i]);
                }
                out.push_back({desc, Poly<IntWord>{{w, Q(1)}}});
                continue;
            }
            // Insertions allowed at every letter except 1 and k.
            std::vector<int> free_letters;
            for (int l = 2; l <= k - 1; ++l) free_letters.push_back(l);
            std::vector<std::vector<int>> extras;
            std::vector<int> cur;
            compositions(m - k, static_cast<int>(free_letters.size()), cur,
                         extras);
            for (const auto& extra : extras) {
                std::vector<int> v(k, 1);
                for (std::size_t j = 0; j < free_letters.size(); ++j)
                    v[free_letters[j] - 1] += extra[j];
                for_each_slot_table(k, v, [&](const std::vector<Slot>& slots) {
                    out.push_back(
                        {splice_desc(w, slots), splice_word(w, slots)});
                });
            }
        }
    }
    return out;
}

PolySum words_to_polygons(const Poly<IntWord>& p, Label d) {
    PolySum out;
    for (const auto& [w, c] : p) {
        std::vector<Label> seq(w.begin(), w.end());
        seq.push_back(d);
        add_polygon(out, seq, c);
    }
    return out;
}

bool is_convergent_sum(const PolySum& eta) {
    int n = 0;
    for (const auto& [cyc, c] : eta)
        for (Label l : cyc)
            if (l < 1000) n = std::max(n, l);
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b) {
            if (b - a + 1 > n - 1) continue;
            std::vector<Label> block;
            for (int l = a; l <= b; ++l) block.push_back(l);
            auto res = residue_p(eta, block, LBL_E);
            if (res.empty()) continue;
            std::map<Cycle, PolySum> by_right;
            for (const auto& [pr, c] : res)
                poly_add_term(by_right[pr.second], pr.first, c);
            for (auto& [right, left] : by_right) {
                // Drop zero sums produced by cancellation.
                PolySum clean;
                for (const auto& [cyc, c] : left)
                    if (c != 0) poly_add_term(clean, cyc, c);
                if (clean.empty()) continue;
                if (!rewrite_01(clean, LBL_E, a).empty()) return false;
            }
        }
    return true;
}

std::vector<Cycle> convergent_polygons(int n) {
    std::vector<Cycle> out;
    if (n < 3) return out;
    IntWord rest(n - 1);
    std::iota(rest.begin(), rest.end(), 2);
    std::set<Cycle> seen;
    auto cyclic_interval = [n](int lo, int hi, int len) {
        // Window [lo..hi] of length len is a cyclic interval mod n if its
        // set equals {a, a+1, ..} wrapping allowed.
        return hi - lo == len - 1;
    };
    do {
        Cycle g;
        g.push_back(1);
        g.insert(g.end(), rest.begin(), rest.end());
        bool conv = true;
        for (int i = 0; i < n && conv; ++i) {
            std::vector<bool> in(n + 1, false);
            int lo = n + 1, hi = 0, cnt = 0;
            for (int len = 1; len <= n - 2 && conv; ++len) {
                int l = g[(i + len - 1) % n];
                in[l] = true;
                lo = std::min(lo, l);
                hi = std::max(hi, l);
                ++cnt;
                if (len < 2) continue;
                if (cyclic_interval(lo, hi, len)) {
                    conv = false;
                    break;
                }
                // Wrapping intervals: set is {1..a} union {b..n}.
                if (in[1] && in[n]) {
                    int a = 1;
                    while (a + 1 <= n && in[a + 1]) ++a;
                    int b = n;
                    while (b - 1 >= 1 && in[b - 1]) --b;
                    if (a + (n - b + 1) == cnt) {
                        conv = false;
                        break;
                    }
                }
            }
        }
        if (conv) {
            Canon c = canonical_cycle(g);
            if (seen.insert(c.cycle).second) out.push_back(c.cycle);
        }
    } while (std::next_permutation(rest.begin(), rest.end()));
    return out;
}

std::vector<InsertionElement> insertion_basis(int n) {
    return lyndon_insertion_words(n - 1);
}

long dim_delta_enumerated(int n) {
    return static_cast<long>(insertion_basis(n).size());
}

long dim_delta(int n) {
    // d_n = sum_{r=5}^{n} sum_{i_1+...+i_{r-3} = n-3} I_{i_1}...I_{i_{r-3}}
    // c_0(r), with I_1 = 1 and I_r = |L_{1..r}|.
    std::vector<long> I(n + 1, 0);
    if (n >= 1) I[1] = 1;
    // Compositions of n-3 into at least two positive parts never use a
    // part above n-4, so larger insertion sets are never needed.
    for (int r = 2; r <= n - 4; ++r)
        I[r] = static_cast<long>(lyndon_insertion_shuffles(r).size());
    long total = 0;
    for (int r = 5; r <= n; ++r) {
        long c0 = count_special_convergent(r);
        int parts = r - 3, sum = n - 3;
        // Sum of products of I over compositions of `sum` into `parts`
        // positive integers, by dynamic programming.
        std::vector<long> dp(sum + 1, 0);
        dp[0] = 1;
        for (int p = 0; p < parts; ++p) {
            std::vector<long> nx(sum + 1, 0);
            for (int s = 0; s <= sum; ++s)
                if (dp[s])
                    for (int i = 1; s + i <= sum; ++i)
                        nx[s + i] += dp[s] * I[i];
            dp = std::move(nx);
        }
        total += dp[sum] * c0;
    }
    return total;
}

}  // namespace mzv
