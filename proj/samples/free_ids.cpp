// Integrated density of states of the free Laplacian by eigenvalue counting
// and by rotation numbers, against (1/pi) arccos(-E/2).

#include <cmath>
#include <cstdio>

#include "rotnum/rotnum.hpp"

int main() {
    using namespace rotnum;
    const PotentialModel model = PotentialModel::free();
    const auto energies = GridSpec{-2.5, 2.5, 0.25}.points();
    const BasePoint w = model.base.origin();
    const IDSCurve eig = ids_empirical(model, w, 10000, energies);
    const IDSCurve rot = ids_rotation(model, w, 100000, energies);

    std::printf("%8s %12s %12s %12s\n", "E", "eigencount", "rotation", "exact");
    for (std::size_t i = 0; i < energies.size(); ++i)
        std::printf("%8.3f %12.6f %12.6f %12.6f\n", energies[i], eig.values[i], rot.values[i],
                    free_laplacian_ids(energies[i]));
}
