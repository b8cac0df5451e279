#pragma once

// The digit map f: an alternating Cantor representation over Q is sent to
// the nega-q expansion with the same digits, y = sum e_n / (-q)^n.

#include "cantor/basis.hpp"
#include "cantor/codec.hpp"
#include "cantor/numerics.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cantor {

/// sum e_n / (-cap)^n of the digits of rep, whatever form they are in.
/// Requires a Zeros or Periodic tail.
Rational f_digitwise(const Representation& rep);

/// f(x) for a canonical alternating representation. Truncated inputs give
/// the image cylinder of the known prefix. Non-canonical input is rejected.
Enclosure eval_f(const Representation& rep);

/// f(x) + f(a0 - x) - f(a0). a0 - x is carried as positive Cantor digits
/// (e_k at odd k, q_k - 1 - e_k at even k) and f acts on them digitwise as
/// sum c_k / cap^k.
Enclosure symmetry_residual(const Representation& x);

/// f(sigma^k x) - sigma^k(f x), the right shift acting on the nega-q image.
Enclosure commute_shift_residual(const Representation& x, std::size_t k);

enum class RangeClass { InRange, ExcludedC1, ExcludedC2 };
std::string to_string(RangeClass c);

struct RangeReport {
    RangeClass verdict = RangeClass::InRange;
    std::size_t level = 0;  // offending level for C1, switching level for C2
};

/// Classifies a nega-q digit string y against the image of f over `spec`.
/// C1: some digit e_n >= q_n. C2: y is the image of a rejected dual form
/// whose value differs from the image of the kept form (nonzero jump).
RangeReport range_membership(const Representation& y, const BaseSpec& spec);

struct JumpReport {
    std::size_t level = 0;
    Rational left;     // limit of f from the left
    Rational right;    // limit of f from the right, equal to f at the point
    Rational jump;     // right - left
    Rational formula;  // q^-n (1 - sum_k (q_{n+k} - 1) / q^k)
};

/// q^-n (1 - sum_{k>=1} (q_{n+k} - 1) / q^k).
Rational jump_formula(const BaseSpec& spec, std::size_t n);

/// One-sided limits of f at a nega-Q-rational point switching at level n,
/// from f on the two dual forms.
JumpReport jump_at(const Representation& point, std::size_t n);

enum class DiscontinuityClass { Empty, Finite, Infinite };
std::string to_string(DiscontinuityClass c);
DiscontinuityClass classify_discontinuities(const BaseSpec& spec);

struct OrderVerdict {
    int x_order = 0;  // sign(x2 - x1)
    int f_order = 0;  // sign(f(x2) - f(x1))
    bool consistent = false;
};

OrderVerdict monotone_witness(const Representation& x1, const Representation& x2);

/// max_{k<=kmax} |f(sigma^{k-1} x) + e_k/q + f(sigma^k x)/q|.
Enclosure functional_system_residual(const Representation& x, std::size_t kmax);

/// sum_{n<=k} e_n/(-q)^n + (-q)^-k f(sigma^k x).
Rational telescoped_reconstruction(const Representation& x, std::size_t k);

/// mu_f(cylinder) / |cylinder| = (q_1...q_m / q^m) sum_k (q_{m+k} - 1) / q^k.
Rational derivative_ratio(const Cylinder& cyl);

/// The same ratio measured directly: |f(max end) - f(min end)| q_1...q_m.
Rational derivative_ratio_measured(const Cylinder& cyl);

/// prod over one period of q_i / cap: the factor by which the ratio shrinks
/// per period block past the preperiod.
Rational derivative_contraction(const BaseSpec& spec);

/// sum_{k>=1} (q_k - 1) / (2 cap^k).
Rational integral_closed_form(const BaseSpec& spec);

struct RiemannResult {
    Enclosure value;
    std::size_t depth = 0;
    Integer cells;
};

/// Lower/upper Darboux sums of f over all rank-m cylinders.
RiemannResult integral_riemann(const BaseSpec& spec, std::size_t depth, std::uint64_t max_cells = cell_budget());

/// Rank-m cylinders with their x-interval and image enclosure, ordered by x.
struct CylinderImage {
    std::vector<int> base;
    Enclosure x;
    Enclosure y;
};

std::vector<CylinderImage> f_graph_cells(const BaseSpec& spec, std::size_t depth,
                                         std::uint64_t max_cells = cell_budget());

}  // namespace cantor
