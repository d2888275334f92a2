// A guided tour: build F_16 over F_2, list the unit-determinant locus, reduce
// a twisted companion matrix to its last-column normal form, and print the
// graded-ring ledgers for (n, q, ell) = (2, 2, 3).

#include <iostream>

#include "qdl/checks.hpp"

using namespace qdl;

int main() {
    FieldCtx k(FieldSpec{2, 1, 4}); // F_16 with q = 2
    std::cout << "field " << k.spec().to_string() << ", modulus " << k.modulus_string() << "\n";

    auto pts = enumerate_variety(k, VarietyKind::Qprime, 2);
    std::cout << "points with e(x)^{q-1} = 1 over F_16: " << pts.size() << "\n";

    auto rep = check_action(k, VarietyKind::Qprime, 2, GroupKind::GL);
    std::cout << "orbits under GL_2(F_2): " << rep.orbit_sizes.size()
              << ", stabilizer violations: " << rep.violations.size() << "\n";

    const auto& x = pts.front();
    auto comp = dl_companion(k, x);
    auto nf = normal_form(comp.f);
    std::cout << "normal form of f(x) for the first point: steps = " << nf.steps
              << ", d = [";
    for (size_t i = 0; i < nf.d.size(); ++i) std::cout << (i ? "," : "") << nf.d[i].v;
    std::cout << "]\n";

    auto P = quillen_presentation(2, 2, 3);
    std::cout << "presentation (n=2, q=2, ell=3): r = " << P.r << ", generators";
    for (const auto& g : P.gens) std::cout << " " << g.name << "(deg " << g.degree << ")";
    std::cout << "\n";

    auto series = inductive_series(2, 2, 3, 20);
    std::cout << "recurrence series coefficients:";
    for (int64_t c : series.a) std::cout << " " << c;
    std::cout << "\n";
    return 0;
}
