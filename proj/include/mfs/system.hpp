#pragma once
// Conformal iterated function systems on the unit interval: built-in infinite
// families, explicit finite self-similar lists, alphabets and truncations,
// exact per-word contraction bounds.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mfs/enclosure.hpp"

namespace mfs {

using BigInt = boost::multiprecision::cpp_int;
using Symbol = std::uint32_t;  // index e >= 1
using Word = std::vector<Symbol>;

// Full means the family's native index set; Truncated(n) means I ∩ {1..n}.
struct Alphabet {
    std::optional<std::uint64_t> truncation;

    static Alphabet full() { return {std::nullopt}; }
    static Alphabet truncated(std::uint64_t n) { return {n}; }
    bool is_full() const { return !truncation.has_value(); }
};

enum class Family {
    Gauss,
    Lueroth,
    GeneralizedLueroth,
    PowerLaw,
    LogPower,
    FiniteSelfSimilar,
};

std::string family_name(Family f);

struct SystemSpec {
    Family family = Family::Gauss;
    double a = 0.0;  // PowerLaw(a, p) and LogPower(a)
    double p = 0.0;
    std::vector<double> ratios;                       // FiniteSelfSimilar
    std::optional<std::vector<double>> offsets;       // FiniteSelfSimilar, optional
    Alphabet alphabet = Alphabet::full();

    static SystemSpec gauss();
    static SystemSpec lueroth();
    static SystemSpec generalized_lueroth();
    static SystemSpec power_law(double a, double p);
    static SystemSpec log_power(double a);
    static SystemSpec finite_self_similar(std::vector<double> ratios,
                                          std::optional<std::vector<double>> offsets = std::nullopt);

    // Affine maps with locally constant derivative (everything except Gauss).
    bool self_similar() const { return family != Family::Gauss; }

    // Largest admissible symbol; nullopt for infinite alphabets.
    std::optional<std::uint64_t> max_symbol() const;
    bool infinite_alphabet() const { return !max_symbol().has_value(); }
    bool contains_symbol(Symbol e) const;
    void validate_word(const Word& w) const;

    // Contraction ratio r_e for self-similar families (throws for Gauss).
    Enclosure ratio(Symbol e) const;
    Enclosure log_ratio(Symbol e) const;
    // Offset of the affine map, when the family defines one.
    std::optional<Enclosure> offset(Symbol e) const;

    // Per-symbol derivative range over [0,1]: exact law for every family.
    Enclosure sup_deriv(Symbol e) const;   // sup_x |phi_e'(x)|
    Enclosure inf_deriv(Symbol e) const;

    std::string describe() const;
    bool same_maps(const SystemSpec& other) const;  // identical map laws (alphabets aside)
};

// x -> (a x + b) / (c x + d) with integer entries and |det| = 1. Products of
// the per-symbol generators [[0,1],[1,e]] encode Gauss words; continuants
// grow exponentially in the word length, hence arbitrary precision.
struct MoebiusMatrix {
    BigInt a{0}, b{1}, c{1}, d{0};  // identity-for-composition convention below

    static MoebiusMatrix identity() { return {1, 0, 0, 1}; }
    static MoebiusMatrix gauss_symbol(Symbol e) { return {0, 1, 1, BigInt(e)}; }
    MoebiusMatrix(BigInt a_, BigInt b_, BigInt c_, BigInt d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}
    MoebiusMatrix() : MoebiusMatrix(identity()) {}

    MoebiusMatrix operator*(const MoebiusMatrix& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    BigInt det() const { return a * d - b * c; }

    // |phi'(x)| = |det| / (c x + d)^2 evaluated over an x-interval.
    Enclosure abs_deriv_over(const Enclosure& x) const;
    // Image of an x-interval (requires c x + d > 0 on it).
    Enclosure image_of(const Enclosure& x) const;
};

MoebiusMatrix gauss_word_matrix(const Word& w);

// Enclosure of a cpp_int (outward by 2 ulps; conversion rounding is not specified).
Enclosure to_enclosure(const BigInt& v);

struct SupContraction {
    double value = 0.0;
    // True when the single-symbol contraction bound degenerates to 1 (Gauss at
    // e = 1, x = 0); per-word bounds still contract.
    bool degenerate = false;
};

// Same family with alphabet Truncated(n) (intersection with an existing truncation).
SystemSpec truncate(const SystemSpec& sys, std::uint64_t n);

// [inf_x |phi_w'(x)|, sup_x |phi_w'(x)|] over x in [0,1].
Enclosure ratio_bounds(const SystemSpec& sys, const Word& w);

// sup over the alphabet of the single-symbol sup-derivative.
SupContraction s_phi(const SystemSpec& sys);

// phi_w([0,1]); requires offsets or a built-in with canonical images.
Enclosure cylinder_interval(const SystemSpec& sys, const Word& w);

// K >= 1 with sup |phi_w'| <= K inf |phi_w'| for all words.
double distortion_constant(const SystemSpec& sys);

// Smallest interval containing the limit set. For truncated Gauss this is the
// span of the two extremal continued fractions; [0,1] otherwise.
Enclosure limit_set_hull(const SystemSpec& sys);

}  // namespace mfs
