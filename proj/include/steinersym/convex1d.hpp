#ifndef STEINERSYM_CONVEX1D_HPP
#define STEINERSYM_CONVEX1D_HPP

#include <limits>
#include <string>
#include <vector>

namespace steinersym {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Behaviour of a piecewise-linear function beyond its outermost breakpoint:
/// either it continues affinely with the given slope, or it jumps to +inf.
struct Tail {
    bool wall = true;
    double slope = 0.0;

    static Tail Wall() { return Tail{true, 0.0}; }
    static Tail Slope(double m) { return Tail{false, m}; }
};

/// A convex piecewise-linear function on the real line, possibly with a
/// finite effective domain (Tail::Wall on either side).
///
/// Invariants for a *valid* instance (see validate()):
///   - breakpoints strictly increasing, values finite,
///   - chord slopes nondecreasing (convexity),
///   - left tail slope < 0 and right tail slope > 0 when present (coercivity),
///     and each tail slope does not cross the adjacent chord slope.
///
/// The struct itself is plain data and may hold invalid states; operations
/// that need convexity or coercivity check what they need and throw.
struct PLConvex1D {
    std::vector<double> breakpoints;
    std::vector<double> values;
    Tail left = Tail::Wall();
    Tail right = Tail::Wall();
};

/// Levels where f attains its minimum: f == min f exactly on [lo, hi].
struct ArgminInterval {
    double lo = 0.0;
    double hi = 0.0;
};

/// The map s -> Vol_1([f <= s]) of sublevel-set widths, stored exactly as a
/// piecewise-linear curve. levels[0] is min f; widths are strictly
/// increasing between stored levels; past levels.back() the width grows
/// linearly with slope tail_slope (zero iff both sides of f are walled).
struct WidthProfile {
    std::vector<double> levels;
    std::vector<double> widths;
    double tail_slope = 0.0;

    double width_at(double s) const;
    /// Generalized inverse inf{ s : width(s) >= w }; +inf when the width
    /// never reaches w (bounded domain).
    double level_at_width(double w) const;
    /// Total measure of the effective domain (+inf when any tail slopes).
    double domain_measure() const;
};

double eval(const PLConvex1D& f, double x);

/// Empty iff all PLConvex1D invariants hold; each entry names the failing
/// index or tail.
std::vector<std::string> validate(const PLConvex1D& f);
bool is_valid(const PLConvex1D& f);
void require_valid(const PLConvex1D& f);

double min_value(const PLConvex1D& f);
ArgminInterval argmin_interval(const PLConvex1D& f);

/// Endpoints of the sublevel set [f <= s], clamped to the effective domain.
/// Requires s >= min f.
std::pair<double, double> sublevel_interval(const PLConvex1D& f, double s);

WidthProfile width_profile(const PLConvex1D& f);

/// Steiner symmetrization: the even convex function with the same sublevel
/// widths as f, i.e. Sf(x) = inf{ s : width(s) >= 2|x| } and Sf(0) = min f.
PLConvex1D symmetrize(const PLConvex1D& f);

/// The Artstein-Klartag-Milman symmetrization 0.5 * (f [] f(-.))(2x), where
/// [] is infimal convolution. Even and convex, pointwise <= symmetrize(f),
/// and does not preserve the integral of exp(-f) in general.
PLConvex1D amk_symmetrize(const PLConvex1D& f);

/// Exact infimal convolution (f [] g)(x) = inf_y f(y) + g(x - y), computed
/// by merging the sorted slope sequences of both operands.
PLConvex1D inf_convolve(const PLConvex1D& f, const PLConvex1D& g);

/// Brute-force evaluation of the defining sup-inf formula
///   sup_{lambda in [0,1]} inf_y [ lambda f(y) + (1-lambda) f(y - 2x) ]
/// on uniform grids. The y-grid spans the sublevel set [f <= t_span_level]
/// inflated by 10% (and shifted copies so both evaluation points are
/// covered). Converges to symmetrize(f)(x) as both grids refine; error is
/// O(max slope * y-step). At x == 0 the formula collapses and min f is
/// returned exactly.
double symmetrize_supinf(const PLConvex1D& f, double x, int lambda_grid,
                         int t_grid, double t_span_level);

/// Exact Legendre conjugate Lf(p) = sup_x (p x - f(x)): breakpoints and
/// slopes exchange roles, tails and walls exchange roles. Requires only
/// convexity (not coercivity), so conjugates of wall-bounded functions --
/// which may have flat or wrong-sign tails -- still round-trip exactly
/// through a second application.
PLConvex1D legendre(const PLConvex1D& f);

/// Exact integral of exp(-f) over the line, summed per affine piece in
/// closed form. Requires coercivity.
double exp_integral(const PLConvex1D& f);

PLConvex1D translate(const PLConvex1D& f, double dx, double dy);
PLConvex1D scale_x(const PLConvex1D& f, double c);  // x -> f(x / c), c > 0
PLConvex1D reflect(const PLConvex1D& f);            // x -> f(-x)

/// Merges collinear consecutive segments; identity on already-minimal input.
PLConvex1D canonicalized(const PLConvex1D& f);

/// sup_x |f(x) - f(-x)|, exact for PL inputs (+inf if the tails or domain
/// endpoints are not mirror images).
double asymmetry(const PLConvex1D& f);

}  // namespace steinersym

#endif
