// Minimal API tour: put a smooth displacement trace on a sphere, split it into
// its interior and exterior Hardy parts, and report where the energy went.

#include <cstdio>
#include <memory>

#include "lamehardy/boundary_ops.hpp"
#include "lamehardy/jet.hpp"

int main() {
    using namespace lamehardy;

    const int m = 3;
    const auto mesh = std::make_shared<const SurfaceMesh>(build_sphere_surface(m, 3));
    const LameParams p(1.0, 1.0);

    // A field that solves the system in the interior ball splits almost
    // entirely into its minus part; the plus part is discretization noise.
    PolyField f(m);
    Exponent e{};
    e[0] = 1;
    f.add_term(e, ExactMultivector::scalar(m, Rational(1)));
    const LipschitzJet interior_trace = jet_from_field(mesh, f);

    // A fundamental-solution trace with pole inside the ball does the
    // opposite: it lives in the plus (exterior) class.
    Vec pole{};
    pole[2] = 0.3;
    const LipschitzJet exterior_trace = jet_from_kernel_marker(mesh, pole);

    for (const auto* item : {&interior_trace, &exterior_trace}) {
        const auto [plus, minus] = hardy_projections(*item, p);
        const double total = jet_norm(*item);
        std::printf("trace norm %.4e  ->  plus %.4e  minus %.4e\n", total, jet_norm(plus),
                    jet_norm(minus));
    }
    return 0;
}
