#pragma once
// Exact rational arithmetic helpers shared by every module.
//
// The coefficient field everywhere is Q, represented by GMP's mpq_class,
// which keeps numerator/denominator reduced with a positive denominator.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace mzv {

using Q = mpq_class;
using Z = mpz_class;

// Binomial coefficient with the convention C(a,b) = 0 when b < 0 or a < b
// (also when a < 0).
inline Z binom(long a, long b) {
    if (b < 0 || a < 0 || a < b) return 0;
    Z r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(a),
                 static_cast<unsigned long>(b));
    return r;
}

// Render a rational as "p" or "p/q".
inline std::string q_to_string(const Q& v) {
    std::string s = v.get_num().get_str();
    if (v.get_den() != 1) s += "/" + v.get_den().get_str();
    return s;
}

// Parse "p" or "p/q".
inline Q q_from_string(const std::string& s) {
    Q v(s);
    v.canonicalize();
    return v;
}

// A finitely supported linear combination of basis objects W with rational
// coefficients.  Zero coefficients are never stored; use poly_add_term.
template <class W>
using Poly = std::map<W, Q>;

template <class W>
void poly_add_term(Poly<W>& p, const W& w, const Q& c) {
    if (c == 0) return;
    auto it = p.find(w);
    if (it == p.end()) {
        p.emplace(w, c);
    } else {
        it->second += c;
        if (it->second == 0) p.erase(it);
    }
}

template <class W>
void poly_add(Poly<W>& p, const Poly<W>& q, const Q& scale = 1) {
    for (const auto& [w, c] : q) poly_add_term(p, w, c * scale);
}

template <class W>
Poly<W> poly_scaled(const Poly<W>& p, const Q& scale) {
    Poly<W> r;
    if (scale == 0) return r;
    for (const auto& [w, c] : p) r.emplace(w, c * scale);
    return r;
}

// Coefficient extraction (f|w).
template <class W>
Q poly_coeff(const Poly<W>& p, const W& w) {
    auto it = p.find(w);
    return it == p.end() ? Q(0) : it->second;
}

}  // namespace mzv
