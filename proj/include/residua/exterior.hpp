#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "residua/error.hpp"
#include "residua/polynomial.hpp"

namespace residua {

/// Trivialized frame data: rank n of V (= variable count) with dual basis
/// pairing <e_I, E_J> = delta_IJ, and the rank of the trivial twist F.
struct frame {
    int n = 0;
    int f_rank = 1;

    friend bool operator==(const frame&, const frame&) = default;
};

inline void check_same_frame(const frame& a, const frame& b) {
    if (!(a == b)) fail(errc::frame_mismatch, "operands use different frames");
}

/// One basis word of the bigraded algebra, kept in canonical generator
/// order dzbar < dz < e < E. Bits 1..n address generators; dzbar bit 0 is
/// reserved for the formal cutoff generator (dbar rho). fslot: 0 none,
/// +t the t-th component of F, -t of its dual.
struct word {
    std::uint32_t dzbar = 0;
    std::uint32_t dz = 0;
    std::uint32_t vee = 0;  // wedge powers of V      (e_i)
    std::uint32_t dual = 0; // wedge powers of V-dual (E_i)
    int fslot = 0;

    auto operator<=>(const word&) const = default;

    int sharp() const {
        return std::popcount(dzbar) + std::popcount(dz) + std::popcount(vee) -
               std::popcount(dual);
    }
    int form_deg() const { return std::popcount(dzbar) + std::popcount(dz); }
};

namespace detail {

inline int inversions_within(std::uint32_t amask, std::uint32_t bmask) {
    int inv = 0;
    while (bmask) {
        int i = std::countr_zero(bmask);
        bmask &= bmask - 1;
        inv += std::popcount(amask >> (i + 1));
    }
    return inv;
}

} // namespace detail

/// Wedge of two canonical words. Returns sign 0 when the product vanishes
/// (repeated generator, or F paired against a mismatched dual component).
/// All generators are odd, so the sign is the transposition parity of the
/// merge.
inline int wedge_words(const word& a, const word& b, word& out) {
    if ((a.dzbar & b.dzbar) || (a.dz & b.dz) || (a.vee & b.vee) || (a.dual & b.dual)) return 0;

    int fs;
    if (a.fslot == 0)
        fs = b.fslot;
    else if (b.fslot == 0)
        fs = a.fslot;
    else if (a.fslot == -b.fslot)
        fs = 0; // F x F-dual contracts through the component pairing
    else if ((a.fslot > 0) != (b.fslot > 0))
        return 0; // mismatched components pair to zero
    else
        fail(errc::invalid_argument, "wedge of two F-valued forms");

    int a1 = std::popcount(a.dz), a2 = std::popcount(a.vee), a3 = std::popcount(a.dual);
    int inv = detail::inversions_within(a.dzbar, b.dzbar) +
              std::popcount(b.dzbar) * (a1 + a2 + a3) +
              detail::inversions_within(a.dz, b.dz) + std::popcount(b.dz) * (a2 + a3) +
              detail::inversions_within(a.vee, b.vee) + std::popcount(b.vee) * a3 +
              detail::inversions_within(a.dual, b.dual);

    out.dzbar = a.dzbar | b.dzbar;
    out.dz = a.dz | b.dz;
    out.vee = a.vee | b.vee;
    out.dual = a.dual | b.dual;
    out.fslot = fs;
    return (inv & 1) ? -1 : 1;
}

/// Element of the bigraded exterior algebra with coefficients in an exact
/// ring C (polynomials, localized smooth expressions, or the formal cutoff
/// extension). Degree of a word is sharp = i + j + k - l.
template <class C>
class form {
public:
    explicit form(frame fr) : frame_(fr) {}

    static form zero(frame fr) { return form(fr); }
    static form term(frame fr, const word& w, C c) {
        form x(fr);
        x.add(w, std::move(c));
        return x;
    }

    const frame& get_frame() const { return frame_; }
    const std::map<word, C>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    void add(const word& w, const C& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    form operator-() const {
        form r(frame_);
        for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
        return r;
    }
    form& operator+=(const form& o) {
        check_same_frame(frame_, o.frame_);
        for (const auto& [w, c] : o.terms_) add(w, c);
        return *this;
    }
    form& operator-=(const form& o) {
        check_same_frame(frame_, o.frame_);
        for (const auto& [w, c] : o.terms_) add(w, -c);
        return *this;
    }
    friend form operator+(form a, const form& b) { return a += b; }
    friend form operator-(form a, const form& b) { return a -= b; }

    friend bool operator==(const form& a, const form& b) {
        return a.frame_ == b.frame_ && a.terms_ == b.terms_;
    }

    form scaled(const C& c) const {
        form r(frame_);
        if (c.is_zero()) return r;
        for (const auto& [w, k] : terms_) r.add(w, k * c);
        return r;
    }
    form scaled_int(int s) const {
        if (s == 1) return *this;
        form r(frame_);
        for (const auto& [w, k] : terms_) r.terms_.emplace(w, s < 0 ? -k : k);
        return r;
    }

    /// True when every term satisfies pred(word).
    template <class Pred>
    bool all_words(Pred pred) const {
        for (const auto& [w, c] : terms_)
            if (!pred(w)) return false;
        return true;
    }

    std::string str(const std::vector<std::string>& var_hint = {}) const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [w, c] : terms_) {
            if (!out.empty()) out += " + ";
            out += "(" + c.str() + ")";
            auto emit = [&](std::uint32_t mask, const char* tag) {
                while (mask) {
                    int i = std::countr_zero(mask);
                    mask &= mask - 1;
                    out += "*";
                    out += tag;
                    out += (i == 0 && tag[0] == 'd' && tag[1] == 'z' && tag[2] == 'b')
                               ? std::string("rho")
                               : std::to_string(i);
                }
            };
            emit(w.dzbar, "dzb");
            emit(w.dz, "dz");
            emit(w.vee, "e");
            emit(w.dual, "E");
            if (w.fslot > 0) out += "*F" + std::to_string(w.fslot);
            if (w.fslot < 0) out += "*Fd" + std::to_string(-w.fslot);
        }
        (void)var_hint;
        return out;
    }

private:
    frame frame_;
    std::map<word, C> terms_;
};

template <class C>
form<C> wedge(const form<C>& a, const form<C>& b) {
    check_same_frame(a.get_frame(), b.get_frame());
    form<C> r(a.get_frame());
    for (const auto& [wa, ca] : a.terms())
        for (const auto& [wb, cb] : b.terms()) {
            word w;
            int s = wedge_words(wa, wb, w);
            if (s == 0) continue;
            C c = ca * cb;
            r.add(w, s < 0 ? -c : c);
        }
    return r;
}

/// kappa: collapses e_K against E_K through the dual pairing and keeps the
/// scalar-valued form part. Terms with unbalanced V-content vanish.
template <class C>
form<C> kappa(const form<C>& x) {
    form<C> r(x.get_frame());
    for (const auto& [w, c] : x.terms()) {
        if (w.fslot != 0) fail(errc::invalid_argument, "kappa: unpaired F component");
        if (w.vee != w.dual) continue;
        r.add(word{w.dzbar, w.dz, 0, 0, 0}, c);
    }
    return r;
}

template <class C>
form<C> kappa_pair(const form<C>& a, const form<C>& b) {
    return kappa(wedge(a, b));
}

namespace detail {

template <class C>
void require_pure_a0v(const form<C>& alpha) {
    bool ok = alpha.all_words([](const word& w) {
        return w.dzbar == 0 && w.dz == 0 && w.dual == 0 && w.fslot == 0 &&
               std::popcount(w.vee) == 1;
    });
    if (!ok) fail(errc::invalid_argument, "expected a section of type A0(V)");
}

template <class C>
void require_pure_a0vdual(const form<C>& gamma) {
    bool ok = gamma.all_words([](const word& w) {
        return w.dzbar == 0 && w.dz == 0 && w.vee == 0 && w.fslot == 0 &&
               std::popcount(w.dual) == 1;
    });
    if (!ok) fail(errc::invalid_argument, "expected a section of type A0(V-dual)");
}

} // namespace detail

/// Contraction by alpha in A0(V) on wedge-V-dual-valued forms, defined by
/// the adjunction <nu, iota_alpha(w)> = <alpha ^ nu, w>. An F component
/// rides along untouched.
template <class C>
form<C> iota_alpha(const form<C>& alpha, const form<C>& x) {
    check_same_frame(alpha.get_frame(), x.get_frame());
    detail::require_pure_a0v(alpha);
    if (!x.all_words([](const word& w) { return w.vee == 0; }))
        fail(errc::invalid_argument, "iota_alpha acts on wedge-V-dual-valued forms");

    form<C> r(x.get_frame());
    for (const auto& [wx, cx] : x.terms()) {
        int k = std::popcount(wx.dual);
        if (k == 0) continue;
        int ext = (wx.form_deg() * (k - 1)) & 1 ? -1 : 1; // dual-basis extraction sign
        word stripped = wx;
        stripped.fslot = 0;
        for (const auto& [wa, ca] : alpha.terms()) {
            std::uint32_t abit = wa.vee;
            if (!(wx.dual & abit)) continue;
            // kappa(alpha ^ e_{L'} ^ term) with L' = L minus the alpha slot.
            word eL{0, 0, wx.dual ^ abit, 0, 0};
            word t1;
            int s1 = wedge_words(word{0, 0, abit, 0, 0}, eL, t1);
            if (s1 == 0) continue;
            word t2;
            int s2 = wedge_words(t1, stripped, t2);
            if (s2 == 0) continue;
            if (t2.vee != t2.dual) continue;
            word res{t2.dzbar, t2.dz, 0, wx.dual ^ abit, wx.fslot};
            C c = ca * cx;
            r.add(res, (ext * s1 * s2) < 0 ? -c : c);
        }
    }
    return r;
}

/// Contraction by gamma in A0(V-dual) on wedge-V-valued forms, pinned down
/// by the pairing identity <iota(nu), w> = <nu, gamma ^ w> over scalar test
/// words w. Note: this flavor extends linearly over the form prefix of nu;
/// the derivation flavor below differs from it by the prefix parity
/// (-1)^{i+j}, and only the derivation flavor satisfies the contraction
/// identities alpha^(u|_th) = u|_(iota_alpha th), iota(u|_th) = u|_(gamma^th).
template <class C>
form<C> iota_gamma_pairing(const form<C>& gamma, const form<C>& x) {
    check_same_frame(gamma.get_frame(), x.get_frame());
    detail::require_pure_a0vdual(gamma);
    if (!x.all_words([](const word& w) { return w.dual == 0; }))
        fail(errc::invalid_argument, "iota_gamma acts on wedge-V-valued forms");

    form<C> r(x.get_frame());
    for (const auto& [wx, cx] : x.terms()) {
        if (wx.vee == 0) continue;
        word stripped = wx;
        stripped.fslot = 0;
        for (const auto& [wg, cg] : gamma.terms()) {
            std::uint32_t gbit = wg.dual;
            if (!(wx.vee & gbit)) continue;
            std::uint32_t rest = wx.vee ^ gbit;
            // X_N = kappa(nu ^ gamma ^ E_N) with N = K minus the gamma slot.
            word t1;
            int s1 = wedge_words(stripped, word{0, 0, 0, gbit, 0}, t1);
            if (s1 == 0) continue;
            word t2;
            int s2 = wedge_words(t1, word{0, 0, 0, rest, 0}, t2);
            if (s2 == 0) continue;
            if (t2.vee != t2.dual) continue;
            word res{t2.dzbar, t2.dz, rest, 0, wx.fslot};
            C c = cg * cx;
            r.add(res, (s1 * s2) < 0 ? -c : c);
        }
    }
    return r;
}

/// Interior product by gamma as a degree -1 graded derivation from the
/// left: kills form generators, contracts e_v against gamma with the parity
/// of the generators standing before e_v. This is the primary contraction
/// on wedge-V-valued forms (the one the contraction compatibilities hold for).
template <class C>
form<C> iota_gamma(const form<C>& gamma, const form<C>& x) {
    check_same_frame(gamma.get_frame(), x.get_frame());
    detail::require_pure_a0vdual(gamma);
    if (!x.all_words([](const word& w) { return w.dual == 0; }))
        fail(errc::invalid_argument, "iota_gamma acts on wedge-V-valued forms");

    form<C> r(x.get_frame());
    for (const auto& [wx, cx] : x.terms()) {
        for (const auto& [wg, cg] : gamma.terms()) {
            std::uint32_t gbit = wg.dual;
            if (!(wx.vee & gbit)) continue;
            int v = std::countr_zero(gbit);
            int before = wx.form_deg() +
                         std::popcount(wx.vee & ((1u << v) - 1u));
            word res = wx;
            res.vee ^= gbit;
            C c = cg * cx;
            r.add(res, (before & 1) ? -c : c);
        }
    }
    return r;
}

/// Contraction u |_ theta: u valued in wedge^k V, theta in
/// wedge^l V-dual, k >= l, with the defining sign
/// (-1)^{(i+j)l + (p+q)#u + l(l-1)/2} against the dual basis.
template <class C>
form<C> contract_u(const form<C>& u, const form<C>& th) {
    check_same_frame(u.get_frame(), th.get_frame());
    if (!u.all_words([](const word& w) { return w.dual == 0 && w.fslot == 0; }))
        fail(errc::invalid_argument, "contract_u: left operand must be wedge-V-valued");
    if (!th.all_words([](const word& w) { return w.vee == 0 && w.fslot == 0; }))
        fail(errc::invalid_argument, "contract_u: right operand must be wedge-V-dual-valued");
    int kmin = -1, lmax = -1;
    for (const auto& [w, c] : u.terms()) {
        int k = std::popcount(w.vee);
        if (kmin < 0 || k < kmin) kmin = k;
    }
    for (const auto& [w, c] : th.terms()) {
        int l = std::popcount(w.dual);
        if (l > lmax) lmax = l;
    }
    if (!u.is_zero() && !th.is_zero() && kmin < lmax)
        fail(errc::invalid_argument, "contract_u: V-degree smaller than V-dual-degree");

    form<C> r(u.get_frame());
    for (const auto& [wu, cu] : u.terms()) {
        for (const auto& [wt, ct] : th.terms()) {
            if (wt.dual & ~wu.vee) continue; // kappa kills every candidate slot
            std::uint32_t rest = wu.vee & ~wt.dual;
            int l = std::popcount(wt.dual);
            long expo = static_cast<long>(wu.form_deg()) * l +
                        static_cast<long>(wt.form_deg()) * wu.sharp() +
                        static_cast<long>(l) * (l - 1) / 2;
            word t1;
            int s1 = wedge_words(wu, wt, t1);
            if (s1 == 0) continue;
            word t2;
            int s2 = wedge_words(t1, word{0, 0, 0, rest, 0}, t2);
            if (s2 == 0) continue;
            if (t2.vee != t2.dual) continue;
            int sign = ((expo & 1) ? -1 : 1) * s1 * s2;
            word res{t2.dzbar, t2.dz, rest, 0, 0};
            C c = cu * ct;
            r.add(res, sign < 0 ? -c : c);
        }
    }
    return r;
}

/// dbar on forms: coefficients expose their antiholomorphic differential
/// through dbar_components(c, out) pushing (generator index, coefficient)
/// pairs; index 0 is the formal cutoff generator.
template <class C>
form<C> dbar(const form<C>& x) {
    form<C> r(x.get_frame());
    std::vector<std::pair<int, C>> comps;
    for (const auto& [w, c] : x.terms()) {
        comps.clear();
        dbar_components(c, comps);
        for (auto& [idx, dc] : comps) {
            word g{1u << idx, 0, 0, 0, 0};
            word res;
            int s = wedge_words(g, w, res);
            if (s == 0) continue;
            r.add(res, s < 0 ? -dc : dc);
        }
    }
    return r;
}

/// dbar for polynomial coefficients: derivatives along the conjugate block
/// of a doubled ring; identically zero on purely holomorphic rings.
inline void dbar_components(const polynomial& c, std::vector<std::pair<int, polynomial>>& out) {
    int n = c.ring()->conj_pairs;
    for (int i = 1; i <= n; ++i) {
        polynomial d = c.derivative(static_cast<std::size_t>(n + i - 1));
        if (!d.is_zero()) out.emplace_back(i, std::move(d));
    }
}

// ---- convenience constructors ------------------------------------------

inline word w_dzbar(int i) { return word{1u << i, 0, 0, 0, 0}; }
inline word w_dz(int i) { return word{0, 1u << i, 0, 0, 0}; }
inline word w_e(int i) { return word{0, 0, 1u << i, 0, 0}; }
inline word w_estar(int i) { return word{0, 0, 0, 1u << i, 0}; }

inline std::uint32_t full_mask(int n) { return ((1u << n) - 1u) << 1; } // bits 1..n

} // namespace residua
