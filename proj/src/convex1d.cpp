#include "steinersym/convex1d.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <stdexcept>

namespace steinersym {

namespace {

constexpr double kSlopeTol = 1e-9;   // relative slack on slope comparisons
constexpr double kMergeTol = 1e-12;  // collinearity / level dedupe

bool nearly_equal(double a, double b, double tol) {
    return std::abs(a - b) <= tol * (1.0 + std::max(std::abs(a), std::abs(b)));
}

std::vector<double> chord_slopes(const PLConvex1D& f) {
    std::vector<double> s;
    s.reserve(f.breakpoints.size());
    for (std::size_t i = 0; i + 1 < f.breakpoints.size(); ++i) {
        s.push_back((f.values[i + 1] - f.values[i]) /
                    (f.breakpoints[i + 1] - f.breakpoints[i]));
    }
    return s;
}

}  // namespace

double eval(const PLConvex1D& f, double x) {
    const auto& bx = f.breakpoints;
    const auto& v = f.values;
    if (x < bx.front()) {
        return f.left.wall ? kInf : v.front() + f.left.slope * (x - bx.front());
    }
    if (x > bx.back()) {
        return f.right.wall ? kInf : v.back() + f.right.slope * (x - bx.back());
    }
    auto it = std::upper_bound(bx.begin(), bx.end(), x);
    if (it == bx.begin()) return v.front();
    std::size_t i = static_cast<std::size_t>(it - bx.begin()) - 1;
    if (i + 1 == bx.size()) return v.back();
    double t = (x - bx[i]) / (bx[i + 1] - bx[i]);
    return v[i] + t * (v[i + 1] - v[i]);
}

std::vector<std::string> validate(const PLConvex1D& f) {
    std::vector<std::string> out;
    auto add = [&out](const std::string& m) { out.push_back(m); };

    if (f.breakpoints.empty()) {
        add("no breakpoints");
        return out;
    }
    if (f.breakpoints.size() != f.values.size()) {
        add("breakpoint/value count mismatch");
        return out;
    }
    for (std::size_t i = 0; i < f.breakpoints.size(); ++i) {
        if (!std::isfinite(f.breakpoints[i])) add("breakpoint " + std::to_string(i) + " not finite");
        if (!std::isfinite(f.values[i])) add("value " + std::to_string(i) + " not finite");
    }
    if (!out.empty()) return out;
    for (std::size_t i = 0; i + 1 < f.breakpoints.size(); ++i) {
        if (!(f.breakpoints[i] < f.breakpoints[i + 1])) {
            add("breakpoints not strictly increasing at index " + std::to_string(i + 1));
        }
    }
    if (!out.empty()) return out;

    const auto slopes = chord_slopes(f);
    for (std::size_t i = 0; i + 1 < slopes.size(); ++i) {
        if (slopes[i + 1] < slopes[i] - kSlopeTol * (1.0 + std::abs(slopes[i]))) {
            add("convexity violation at index " + std::to_string(i + 1) +
                " (chord slope drops from " + std::to_string(slopes[i]) + " to " +
                std::to_string(slopes[i + 1]) + ")");
        }
    }
    if (!f.left.wall) {
        if (!std::isfinite(f.left.slope)) add("left tail slope not finite");
        else {
            if (!(f.left.slope < 0.0))
                add("left tail slope " + std::to_string(f.left.slope) +
                    " not negative (f bounded on a left ray, not coercive)");
            if (!slopes.empty() &&
                f.left.slope > slopes.front() + kSlopeTol * (1.0 + std::abs(slopes.front())))
                add("left tail slope exceeds first chord slope");
            if (slopes.empty() && !f.right.wall && f.left.slope > f.right.slope)
                add("left tail slope exceeds right tail slope");
        }
    }
    if (!f.right.wall) {
        if (!std::isfinite(f.right.slope)) add("right tail slope not finite");
        else {
            if (!(f.right.slope > 0.0))
                add("right tail slope " + std::to_string(f.right.slope) +
                    " not positive (f bounded on a right ray, not coercive)");
            if (!slopes.empty() &&
                f.right.slope < slopes.back() - kSlopeTol * (1.0 + std::abs(slopes.back())))
                add("right tail slope below last chord slope");
        }
    }
    return out;
}

bool is_valid(const PLConvex1D& f) { return validate(f).empty(); }

void require_valid(const PLConvex1D& f) {
    auto v = validate(f);
    if (v.empty()) return;
    std::ostringstream os;
    os << "invalid PLConvex1D:";
    for (const auto& m : v) os << " [" << m << "]";
    throw std::invalid_argument(os.str());
}

double min_value(const PLConvex1D& f) {
    return *std::min_element(f.values.begin(), f.values.end());
}

ArgminInterval argmin_interval(const PLConvex1D& f) {
    require_valid(f);
    const double a = min_value(f);
    const double tol = kMergeTol * (1.0 + std::abs(a));
    std::size_t lo = 0, hi = 0;
    bool seen = false;
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        if (std::abs(f.values[i] - a) <= tol) {
            if (!seen) lo = i;
            hi = i;
            seen = true;
        }
    }
    return ArgminInterval{f.breakpoints[lo], f.breakpoints[hi]};
}

namespace {

// Monotone branch of f on one side of the argmin: positions and the (strictly
// increasing) values along it, walking away from the minimum, plus the tail.
struct Branch {
    std::vector<double> levels;  // values, increasing away from the min
    std::vector<double> pos;     // matching abscissae
    bool wall = true;            // domain ends after pos.back()
    double slope = 0.0;          // |df/dx| on the tail when !wall

    // Abscissa offset from pos.front() where the branch first reaches level s
    // (clamped at the branch end for walls).
    double invert(double s) const {
        if (s <= levels.front()) return pos.front();
        if (s >= levels.back()) {
            if (wall) return pos.back();
            return pos.back() + (s - levels.back()) / slope * dir();
        }
        auto it = std::upper_bound(levels.begin(), levels.end(), s);
        std::size_t i = static_cast<std::size_t>(it - levels.begin());
        double t = (s - levels[i - 1]) / (levels[i] - levels[i - 1]);
        return pos[i - 1] + t * (pos[i] - pos[i - 1]);
    }

    double dir() const { return pos.size() > 1 && pos.back() < pos.front() ? -1.0 : sign_; }
    double sign_ = 1.0;  // direction of travel when the breakpoint list is trivial
};

Branch right_branch(const PLConvex1D& f, std::size_t argmax_hi_idx) {
    Branch b;
    b.sign_ = 1.0;
    for (std::size_t i = argmax_hi_idx; i < f.breakpoints.size(); ++i) {
        if (!b.levels.empty() && f.values[i] <= b.levels.back()) continue;  // dedupe flats
        b.levels.push_back(f.values[i]);
        b.pos.push_back(f.breakpoints[i]);
    }
    b.wall = f.right.wall;
    b.slope = f.right.wall ? 0.0 : f.right.slope;
    return b;
}

Branch left_branch(const PLConvex1D& f, std::size_t argmin_lo_idx) {
    Branch b;
    b.sign_ = -1.0;
    for (std::size_t j = argmin_lo_idx + 1; j-- > 0;) {
        if (!b.levels.empty() && f.values[j] <= b.levels.back()) continue;
        b.levels.push_back(f.values[j]);
        b.pos.push_back(f.breakpoints[j]);
    }
    b.wall = f.left.wall;
    b.slope = f.left.wall ? 0.0 : -f.left.slope;
    return b;
}

std::pair<Branch, Branch> branches(const PLConvex1D& f) {
    const double a = min_value(f);
    const double tol = kMergeTol * (1.0 + std::abs(a));
    std::size_t lo = 0, hi = 0;
    bool seen = false;
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        if (std::abs(f.values[i] - a) <= tol) {
            if (!seen) lo = i;
            hi = i;
            seen = true;
        }
    }
    return {left_branch(f, lo), right_branch(f, hi)};
}

}  // namespace

std::pair<double, double> sublevel_interval(const PLConvex1D& f, double s) {
    require_valid(f);
    if (s < min_value(f)) throw std::invalid_argument("sublevel_interval: level below min f");
    auto [bl, br] = branches(f);
    return {bl.invert(s), br.invert(s)};
}

WidthProfile width_profile(const PLConvex1D& f) {
    require_valid(f);
    auto [bl, br] = branches(f);

    std::vector<double> levels;
    levels.reserve(bl.levels.size() + br.levels.size());
    levels.insert(levels.end(), bl.levels.begin(), bl.levels.end());
    levels.insert(levels.end(), br.levels.begin(), br.levels.end());
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end(),
                             [](double a, double b) { return nearly_equal(a, b, kMergeTol); }),
                 levels.end());

    WidthProfile w;
    for (double s : levels) {
        double width = br.invert(s) - bl.invert(s);
        if (width < 0.0) width = 0.0;  // point minimum at s = min f
        if (!w.widths.empty() && width <= w.widths.back() + kMergeTol * (1.0 + width)) {
            continue;  // both branches already exhausted at this level
        }
        w.levels.push_back(s);
        w.widths.push_back(width);
    }
    w.tail_slope = (bl.wall ? 0.0 : 1.0 / bl.slope) + (br.wall ? 0.0 : 1.0 / br.slope);
    return w;
}

double WidthProfile::width_at(double s) const {
    if (s < levels.front()) return 0.0;
    if (s >= levels.back()) return widths.back() + tail_slope * (s - levels.back());
    auto it = std::upper_bound(levels.begin(), levels.end(), s);
    std::size_t i = static_cast<std::size_t>(it - levels.begin());
    double t = (s - levels[i - 1]) / (levels[i] - levels[i - 1]);
    return widths[i - 1] + t * (widths[i] - widths[i - 1]);
}

double WidthProfile::level_at_width(double w) const {
    if (w <= widths.front()) return levels.front();
    if (w > widths.back()) {
        if (tail_slope <= 0.0) return kInf;
        return levels.back() + (w - widths.back()) / tail_slope;
    }
    auto it = std::lower_bound(widths.begin(), widths.end(), w);
    std::size_t i = static_cast<std::size_t>(it - widths.begin());
    if (i == 0) return levels.front();
    double t = (w - widths[i - 1]) / (widths[i] - widths[i - 1]);
    return levels[i - 1] + t * (levels[i] - levels[i - 1]);
}

double WidthProfile::domain_measure() const {
    return tail_slope > 0.0 ? kInf : widths.back();
}

PLConvex1D symmetrize(const PLConvex1D& f) {
    const WidthProfile w = width_profile(f);

    PLConvex1D s;
    const std::size_t m = w.levels.size();
    // Mirror the half-width curve: (-w_i/2, s_i) ... (w_i/2, s_i).
    for (std::size_t j = m; j-- > 0;) {
        s.breakpoints.push_back(-0.5 * w.widths[j]);
        s.values.push_back(w.levels[j]);
    }
    if (w.widths.front() == 0.0) {
        // point minimum: the +/- 0 entries coincide, keep one
        for (std::size_t j = 1; j < m; ++j) {
            s.breakpoints.push_back(0.5 * w.widths[j]);
            s.values.push_back(w.levels[j]);
        }
    } else {
        for (std::size_t j = 0; j < m; ++j) {
            s.breakpoints.push_back(0.5 * w.widths[j]);
            s.values.push_back(w.levels[j]);
        }
    }
    if (w.tail_slope > 0.0) {
        s.left = Tail::Slope(-2.0 / w.tail_slope);
        s.right = Tail::Slope(2.0 / w.tail_slope);
    } else {
        s.left = Tail::Wall();
        s.right = Tail::Wall();
    }
    return s;
}

// --- infimal convolution ------------------------------------------------

namespace {

// A convex PL function decomposed around its argmin: the flat bottom plus
// sorted (slope, length) runs walking away from it on each side.
struct SlopeForm {
    double xlo = 0.0, xhi = 0.0;  // argmin interval
    double vmin = 0.0;
    std::vector<std::pair<double, double>> right;  // ascending positive slopes
    std::vector<std::pair<double, double>> left;   // descending negative slopes
    bool right_wall = true, left_wall = true;
    double right_tail = 0.0, left_tail = 0.0;
};

SlopeForm decompose(const PLConvex1D& f) {
    SlopeForm s;
    const double a = min_value(f);
    const double tol = kMergeTol * (1.0 + std::abs(a));
    std::size_t lo = 0, hi = 0;
    bool seen = false;
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        if (std::abs(f.values[i] - a) <= tol) {
            if (!seen) lo = i;
            hi = i;
            seen = true;
        }
    }
    s.xlo = f.breakpoints[lo];
    s.xhi = f.breakpoints[hi];
    s.vmin = a;
    for (std::size_t i = hi; i + 1 < f.breakpoints.size(); ++i) {
        double len = f.breakpoints[i + 1] - f.breakpoints[i];
        s.right.emplace_back((f.values[i + 1] - f.values[i]) / len, len);
    }
    for (std::size_t i = lo; i-- > 0;) {
        double len = f.breakpoints[i + 1] - f.breakpoints[i];
        s.left.emplace_back((f.values[i + 1] - f.values[i]) / len, len);
    }
    s.right_wall = f.right.wall;
    s.right_tail = f.right.slope;
    s.left_wall = f.left.wall;
    s.left_tail = f.left.slope;
    return s;
}

// Merge two same-side run lists by marginal cost. `ascending` is true for
// right sides (cheapest slope first), false for left sides.
void merge_side(const std::vector<std::pair<double, double>>& a, bool a_wall, double a_tail,
                const std::vector<std::pair<double, double>>& b, bool b_wall, double b_tail,
                bool ascending, std::vector<std::pair<double, double>>& out, bool& out_wall,
                double& out_tail) {
    out_wall = a_wall && b_wall;
    double tail = 0.0;
    if (!out_wall) {
        if (a_wall) tail = b_tail;
        else if (b_wall) tail = a_tail;
        else tail = ascending ? std::min(a_tail, b_tail) : std::max(a_tail, b_tail);
    }
    out_tail = tail;

    auto comes_before = [ascending](double s1, double s2) {
        return ascending ? s1 < s2 : s1 > s2;
    };
    auto absorbed = [&](double s) {
        // an infinite tail swallows every steeper finite run
        return !out_wall && !comes_before(s, tail);
    };

    std::size_t i = 0, j = 0;
    auto push = [&](std::pair<double, double> run) {
        if (absorbed(run.first)) return;
        if (!out.empty() && nearly_equal(out.back().first, run.first, kSlopeTol)) {
            out.back().second += run.second;
        } else {
            out.push_back(run);
        }
    };
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && comes_before(a[i].first, b[j].first))) {
            push(a[i++]);
        } else {
            push(b[j++]);
        }
    }
}

PLConvex1D rebuild(const SlopeForm& s) {
    PLConvex1D f;
    // left side, walking back toward the argmin
    double x = s.xlo, v = s.vmin;
    std::vector<double> bx{x}, vv{v};
    for (const auto& [slope, len] : s.left) {
        x -= len;
        v -= slope * len;  // slope < 0 so v grows
        bx.push_back(x);
        vv.push_back(v);
    }
    std::reverse(bx.begin(), bx.end());
    std::reverse(vv.begin(), vv.end());
    if (s.xhi > s.xlo) {
        bx.push_back(s.xhi);
        vv.push_back(s.vmin);
    }
    x = s.xhi;
    v = s.vmin;
    for (const auto& [slope, len] : s.right) {
        x += len;
        v += slope * len;
        bx.push_back(x);
        vv.push_back(v);
    }
    f.breakpoints = std::move(bx);
    f.values = std::move(vv);
    f.left = s.left_wall ? Tail::Wall() : Tail::Slope(s.left_tail);
    f.right = s.right_wall ? Tail::Wall() : Tail::Slope(s.right_tail);
    return f;
}

}  // namespace

PLConvex1D inf_convolve(const PLConvex1D& f, const PLConvex1D& g) {
    require_valid(f);
    require_valid(g);
    const SlopeForm a = decompose(f);
    const SlopeForm b = decompose(g);
    SlopeForm r;
    r.xlo = a.xlo + b.xlo;
    r.xhi = a.xhi + b.xhi;
    r.vmin = a.vmin + b.vmin;
    merge_side(a.right, a.right_wall, a.right_tail, b.right, b.right_wall, b.right_tail,
               /*ascending=*/true, r.right, r.right_wall, r.right_tail);
    merge_side(a.left, a.left_wall, a.left_tail, b.left, b.left_wall, b.left_tail,
               /*ascending=*/false, r.left, r.left_wall, r.left_tail);
    return rebuild(r);
}

PLConvex1D amk_symmetrize(const PLConvex1D& f) {
    require_valid(f);
    PLConvex1D h = inf_convolve(f, reflect(f));
    // Stf(x) = h(2x) / 2: breakpoints and values halve, slopes are unchanged.
    for (auto& b : h.breakpoints) b *= 0.5;
    for (auto& v : h.values) v *= 0.5;
    return h;
}

double symmetrize_supinf(const PLConvex1D& f, double x, int lambda_grid, int t_grid,
                         double t_span_level) {
    require_valid(f);
    if (lambda_grid < 2 || t_grid < 2) {
        throw std::invalid_argument("symmetrize_supinf: both grids need at least 2 points");
    }
    if (x == 0.0) return min_value(f);  // the lambda-sup collapses to inf f

    double level = std::max(t_span_level, min_value(f));
    auto [sl, sr] = sublevel_interval(f, level);
    const double c = 0.5 * (sl + sr);
    const double r = 0.55 * std::max(sr - sl, 1e-6);  // 10% inflation
    // cover both f(y) and f(y - 2x)
    const double lo = std::min(c - r, c - r + 2.0 * x);
    const double hi = std::max(c + r, c + r + 2.0 * x);
    const double dy = (hi - lo) / (t_grid - 1);

    double best = -kInf;
    for (int j = 0; j < lambda_grid; ++j) {
        const double lam = static_cast<double>(j) / (lambda_grid - 1);
        double inner = kInf;
        for (int i = 0; i < t_grid; ++i) {
            const double y = lo + i * dy;
            const double fy = eval(f, y);
            const double fz = eval(f, y - 2.0 * x);
            // convention 0 * inf = 0, as in the defining formula's endpoints
            const double term1 = lam == 0.0 ? 0.0 : lam * fy;
            const double term2 = lam == 1.0 ? 0.0 : (1.0 - lam) * fz;
            inner = std::min(inner, term1 + term2);
        }
        best = std::max(best, inner);
    }
    return best;
}

PLConvex1D legendre(const PLConvex1D& f) {
    // convexity is required; coercivity is not (conjugates of wall-bounded
    // functions come back through here during biconjugation)
    if (f.breakpoints.empty() || f.breakpoints.size() != f.values.size()) {
        throw std::invalid_argument("legendre: malformed input");
    }
    const auto slopes = chord_slopes(f);
    for (std::size_t i = 0; i + 1 < slopes.size(); ++i) {
        if (slopes[i + 1] < slopes[i] - kSlopeTol * (1.0 + std::abs(slopes[i]))) {
            throw std::invalid_argument("legendre: input not convex");
        }
    }

    PLConvex1D d;
    auto push = [&d](double p, double v) {
        if (!d.breakpoints.empty() && nearly_equal(d.breakpoints.back(), p, kMergeTol)) return;
        d.breakpoints.push_back(p);
        d.values.push_back(v);
    };
    if (!f.left.wall) {
        push(f.left.slope, f.left.slope * f.breakpoints.front() - f.values.front());
    }
    for (std::size_t i = 0; i < slopes.size(); ++i) {
        push(slopes[i], slopes[i] * f.breakpoints[i] - f.values[i]);
    }
    if (!f.right.wall) {
        push(f.right.slope, f.right.slope * f.breakpoints.back() - f.values.back());
    }
    if (d.breakpoints.empty()) {
        // point indicator at x0: the conjugate is the affine map p -> p*x0 - v0
        d.breakpoints.push_back(0.0);
        d.values.push_back(-f.values.front());
    }
    d.left = f.left.wall ? Tail::Slope(f.breakpoints.front()) : Tail::Wall();
    d.right = f.right.wall ? Tail::Slope(f.breakpoints.back()) : Tail::Wall();
    return d;
}

double exp_integral(const PLConvex1D& f) {
    require_valid(f);
    double total = 0.0;
    if (!f.left.wall) total += std::exp(-f.values.front()) / (-f.left.slope);
    if (!f.right.wall) total += std::exp(-f.values.back()) / f.right.slope;
    for (std::size_t i = 0; i + 1 < f.breakpoints.size(); ++i) {
        const double h = f.breakpoints[i + 1] - f.breakpoints[i];
        const double m = (f.values[i + 1] - f.values[i]) / h;
        if (std::abs(m * h) < 1e-12) {
            total += h * std::exp(-f.values[i]);
        } else {
            total += std::exp(-f.values[i]) * (-std::expm1(-m * h)) / m;
        }
    }
    return total;
}

PLConvex1D translate(const PLConvex1D& f, double dx, double dy) {
    PLConvex1D g = f;
    for (auto& b : g.breakpoints) b += dx;
    for (auto& v : g.values) v += dy;
    return g;
}

PLConvex1D scale_x(const PLConvex1D& f, double c) {
    if (!(c > 0.0)) throw std::invalid_argument("scale_x: factor must be positive");
    PLConvex1D g = f;
    for (auto& b : g.breakpoints) b *= c;
    if (!g.left.wall) g.left.slope /= c;
    if (!g.right.wall) g.right.slope /= c;
    return g;
}

PLConvex1D reflect(const PLConvex1D& f) {
    PLConvex1D g;
    const std::size_t n = f.breakpoints.size();
    g.breakpoints.resize(n);
    g.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        g.breakpoints[i] = -f.breakpoints[n - 1 - i];
        g.values[i] = f.values[n - 1 - i];
    }
    g.left = f.right.wall ? Tail::Wall() : Tail::Slope(-f.right.slope);
    g.right = f.left.wall ? Tail::Wall() : Tail::Slope(-f.left.slope);
    return g;
}

PLConvex1D canonicalized(const PLConvex1D& f) {
    if (f.breakpoints.size() < 2) return f;
    PLConvex1D g;
    g.left = f.left;
    g.right = f.right;
    const auto slopes = chord_slopes(f);
    g.breakpoints.push_back(f.breakpoints.front());
    g.values.push_back(f.values.front());
    for (std::size_t i = 1; i + 1 < f.breakpoints.size(); ++i) {
        if (!nearly_equal(slopes[i - 1], slopes[i], kMergeTol)) {
            g.breakpoints.push_back(f.breakpoints[i]);
            g.values.push_back(f.values[i]);
        }
    }
    g.breakpoints.push_back(f.breakpoints.back());
    g.values.push_back(f.values.back());

    // drop interior endpoints collinear with a slope tail
    auto drop_front = [&g]() {
        if (g.breakpoints.size() < 2 || g.left.wall) return false;
        double chord = (g.values[1] - g.values[0]) / (g.breakpoints[1] - g.breakpoints[0]);
        if (!nearly_equal(chord, g.left.slope, kMergeTol)) return false;
        g.breakpoints.erase(g.breakpoints.begin());
        g.values.erase(g.values.begin());
        return true;
    };
    auto drop_back = [&g]() {
        if (g.breakpoints.size() < 2 || g.right.wall) return false;
        std::size_t k = g.breakpoints.size() - 1;
        double chord = (g.values[k] - g.values[k - 1]) / (g.breakpoints[k] - g.breakpoints[k - 1]);
        if (!nearly_equal(chord, g.right.slope, kMergeTol)) return false;
        g.breakpoints.pop_back();
        g.values.pop_back();
        return true;
    };
    while (drop_front()) {}
    while (drop_back()) {}
    return g;
}

double asymmetry(const PLConvex1D& f) {
    // tails must mirror, otherwise the sup is infinite
    if (f.left.wall != f.right.wall) return kInf;
    if (!f.left.wall && std::abs(f.left.slope + f.right.slope) > 1e-9) return kInf;
    if (f.left.wall && std::abs(f.breakpoints.front() + f.breakpoints.back()) > 1e-9) return kInf;

    double worst = 0.0;
    for (double b : f.breakpoints) {
        for (double x : {b, -b}) {
            const double a = eval(f, x), c = eval(f, -x);
            if (std::isinf(a) && std::isinf(c)) continue;
            if (std::isinf(a) || std::isinf(c)) return kInf;
            worst = std::max(worst, std::abs(a - c));
        }
    }
    return worst;
}

}  // namespace steinersym
