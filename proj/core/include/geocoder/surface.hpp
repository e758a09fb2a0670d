#pragma once

#include <vector>

#include "geocoder/moebius.hpp"

namespace geocoder {

// Where an oriented geodesic crosses the closed polygon F.
struct Crossing {
    bool hit = false;
    int entry_side = 0;
    int exit_side = 0;
    cplx entry;  // Poincare disk points
    cplx exit;
    double gap = 0;  // how far the chord misses F (Klein parameter), 0 when it hits
};

// Regular right-angled (8g-4)-gon centred at the origin. Vertex V_k sits at
// angle M_k; side k joins V_k to V_{k+1} and lies on the isometric circle of
// T_k, whose endpoints are P_k and Q_{k+1}. Side 1 faces angle -pi/2.
class Surface {
public:
    static Surface build(int genus);

    int genus() const { return genus_; }
    int n() const { return n_; }
    int wrap_index(int i) const { return ((i - 1) % n_ + n_) % n_ + 1; }

    int sigma(int i) const;
    int rho(int i) const { return wrap_index(sigma(i) + 1); }
    int theta(int i) const { return wrap_index(sigma(i) - 1); }
    int tau(int i) const { return wrap_index(i + 4 * genus_ - 2); }

    double P(int i) const { return P_[slot(i)]; }
    double Q(int i) const { return Q_[slot(i)]; }
    double M(int i) const { return M_[slot(i)]; }
    cplx V(int i) const { return V_[slot(i)]; }
    const Mobius& T(int i) const { return T_[slot(i)]; }
    const Mobius& U(int i) const { return U_[slot(i)]; }

    double vertex_radius() const { return vertex_radius_; }
    double center_distance() const { return center_distance_; }
    double circle_radius() const { return circle_radius_; }
    // Direction of the centre of the isometric circle carrying side i.
    double side_direction(int i) const;

    Crossing cross(const Geodesic& g) const;

private:
    int slot(int i) const { return wrap_index(i) - 1; }

    int genus_ = 0;
    int n_ = 0;
    double phase_ = 0;
    double vertex_radius_ = 0;
    double center_distance_ = 0;
    double circle_radius_ = 0;
    std::vector<double> P_, Q_, M_;
    std::vector<cplx> V_, K_;
    std::vector<Mobius> T_, U_;
};

// which is one of 's', 'r', 't' (theta) or 'u' (tau); i must lie in 1..n.
int index_map(const Surface& s, char which, int i);

struct RelationReport {
    double side_pairing = 0;   // T_sigma(i) T_i = Id
    double vertex_cycle = 0;   // T_i V_i = V_rho(i)
    double four_fold = 0;      // T_rho^3 T_rho^2 T_rho T_i = Id
    double t_images = 0;       // six boundary points per generator
    double corner_forms = 0;   // two expressions for U_i
    double corner_inverse = 0; // U_i^-1 = U_tau(i)
    double corner_vertex = 0;  // U_i V_tau(i) = V_i
    double max() const;
};

RelationReport relation_report(const Surface& s);

bool meets_polygon(const Surface& s, const Geodesic& g);
int exit_side(const Surface& s, const Geodesic& g);
int entry_side(const Surface& s, const Geodesic& g);

// T_{i1} T_{i2} ... T_{ik}
Mobius word_product(const Surface& s, const std::vector<int>& letters);
Geodesic axis(const Surface& s, const std::vector<int>& letters);
Geodesic axis(const Mobius& m);

}  // namespace geocoder
