#include "speclab/quadrature.hpp"

#include <stdexcept>

namespace speclab {

const GaussRule7& gaussLegendre7() {
    static const GaussRule7 rule{
        {-0.9491079123427585, -0.7415311855993945, -0.4058451513773972, 0.0,
         0.4058451513773972, 0.7415311855993945, 0.9491079123427585},
        {0.12948496616887065, 0.2797053914892766, 0.3818300505051183, 0.41795918367346896,
         0.3818300505051183, 0.2797053914892766, 0.12948496616887065}};
    return rule;
}

double integrateGL7(const std::function<double(double)>& f, double a, double b, int panels) {
    if (panels < 1) throw std::invalid_argument("integrateGL7: panels must be positive");
    const GaussRule7& g = gaussLegendre7();
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        double s = 0.0;
        for (int k = 0; k < 7; ++k) s += g.weights[k] * f(mid + 0.5 * h * g.nodes[k]);
        total += 0.5 * h * s;
    }
    return total;
}

}  // namespace speclab
