#include "relmass/quadrature.hpp"

#include <cmath>

#include "relmass/error.hpp"

namespace relmass {

namespace {

struct Panel {
    double a, m, b;
    double fa, fm, fb;
    double whole;
};

class Simpson {
  public:
    Simpson(const std::function<double(double)>& f, int max_depth) : f_(f), max_depth_(max_depth) {}

    double eval(double x) {
        ++evaluations;
        const double y = f_(x);
        if (!std::isfinite(y)) throw NumericalError("quadrature: integrand is not finite");
        return y;
    }

    double refine(const Panel& p, double tol, int depth) {
        const double lm = 0.5 * (p.a + p.m), rm = 0.5 * (p.m + p.b);
        const double flm = eval(lm), frm = eval(rm);
        const double left = (p.m - p.a) / 6.0 * (p.fa + 4.0 * flm + p.fm);
        const double right = (p.b - p.m) / 6.0 * (p.fm + 4.0 * frm + p.fb);
        const double delta = left + right - p.whole;
        if (std::abs(delta) <= 15.0 * tol) {
            error += std::abs(delta) / 15.0;
            return left + right + delta / 15.0;
        }
        if (depth >= max_depth_) throw NumericalError("quadrature: subdivision depth exhausted");
        return refine({p.a, lm, p.m, p.fa, flm, p.fm, left}, 0.5 * tol, depth + 1) +
               refine({p.m, rm, p.b, p.fm, frm, p.fb, right}, 0.5 * tol, depth + 1);
    }

    long evaluations = 0;
    double error = 0.0;

  private:
    const std::function<double(double)>& f_;
    int max_depth_;
};

}  // namespace

QuadratureResult integrate_adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                            const QuadratureOptions& options) {
    if (!(options.abs_tol > 0.0)) throw DomainError("quadrature: tolerance must be positive");
    if (options.initial_panels < 1) throw DomainError("quadrature: need at least one panel");
    if (a == b) return {0.0, 0.0, 0};

    Simpson s(f, options.max_depth);
    const int panels = options.initial_panels;
    const double h = (b - a) / panels;
    const double panel_tol = options.abs_tol / panels;
    double total = 0.0;
    double fa = s.eval(a);
    for (int k = 0; k < panels; ++k) {
        const double pa = a + h * k;
        const double pb = k + 1 == panels ? b : a + h * (k + 1);
        const double pm = 0.5 * (pa + pb);
        const double fm = s.eval(pm), fb = s.eval(pb);
        const double whole = (pb - pa) / 6.0 * (fa + 4.0 * fm + fb);
        total += s.refine({pa, pm, pb, fa, fm, fb, whole}, panel_tol, 0);
        fa = fb;
    }
    return {total, s.error, s.evaluations};
}

}  // namespace relmass
