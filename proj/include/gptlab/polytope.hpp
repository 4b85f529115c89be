#pragma once

// Exact convex polytopes with dual (vertex / facet) representation. Conversions
// run the double description method on pointed cones; lower-dimensional bodies
// are first restricted to their affine hull through an exact chart and lifted
// back, with the hull equations emitted as inequality pairs.

#include <stdexcept>
#include <string>
#include <vector>

#include "gptlab/linalg.hpp"

namespace gptlab {

struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnboundedRegionError : GeometryError {
    using GeometryError::GeometryError;
};
struct EmptyRegionError : GeometryError {
    using GeometryError::GeometryError;
};

// normal · x <= offset
struct Halfspace {
    QVec normal;
    Rat offset;
};

class Polytope {
  public:
    Polytope() = default;

    static Polytope from_vertices(int ambient_dim, std::vector<QVec> vertices);
    static Polytope from_halfspaces(int ambient_dim, std::vector<Halfspace> facets);

    int ambient_dim() const { return ambient_dim_; }
    bool has_vrep() const { return has_vrep_; }
    bool has_hrep() const { return has_hrep_; }
    std::string rep_status() const;

    const std::vector<QVec>& vertices() const;
    const std::vector<Halfspace>& facets() const;

  private:
    int ambient_dim_ = 0;
    bool has_vrep_ = false;
    bool has_hrep_ = false;
    std::vector<QVec> vertices_;
    std::vector<Halfspace> facets_;

    friend Polytope dd_vrep_to_hrep(const Polytope&);
    friend Polytope dd_hrep_to_vrep(const Polytope&);
};

// Extreme rays of the pointed cone {x : rows[i] · x >= 0}. Throws GeometryError
// when the cone is not pointed (rank of rows < dim). Rays come back primitive
// (coprime integer entries) and lexicographically sorted.
std::vector<QVec> extreme_rays(const std::vector<QVec>& rows, int dim);

// V -> H. Output carries both representations; facet list is irredundant up to
// the affine-hull equation pairs.
Polytope dd_vrep_to_hrep(const Polytope& p);

// H -> V. Throws EmptyRegionError / UnboundedRegionError instead of guessing.
Polytope dd_hrep_to_vrep(const Polytope& p);

// Returns p with the missing representation filled in (no-op when present).
Polytope with_vrep(const Polytope& p);
Polytope with_hrep(const Polytope& p);

// Membership. Uses the H-rep when available, otherwise decides by LP whether x
// is a convex combination of the vertices.
bool contains(const Polytope& p, const QVec& x);
bool in_convex_hull(const std::vector<QVec>& points, const QVec& x);

// Removes points lying in the hull of the others (LP-based, deterministic).
std::vector<QVec> prune_to_extreme(const std::vector<QVec>& points);

// Exact equality of vertex sets (converts reps as needed).
bool same_polytope(const Polytope& a, const Polytope& b);

std::vector<QVec> sorted_vertex_set(std::vector<QVec> vertices);

// Chart onto the affine hull of a point set: x = origin + basis * t with the
// chart coordinates t recovered exactly by a left inverse.
class AffineChart {
  public:
    explicit AffineChart(const std::vector<QVec>& points);

    int ambient_dim() const { return static_cast<int>(origin_.size()); }
    int dim() const { return static_cast<int>(basis_.cols()); }

    QVec to_chart(const QVec& ambient) const;    // exact only on the affine hull
    QVec to_ambient(const QVec& chart) const;
    bool on_hull(const QVec& ambient) const;

    const QVec& origin() const { return origin_; }
    const QMat& basis() const { return basis_; }
    const QMat& left_inverse() const { return pinv_; }

    // Rows w with w · x = w · origin for every x on the hull.
    const std::vector<QVec>& hull_normals() const { return hull_normals_; }

  private:
    QVec origin_;
    QMat basis_;
    QMat pinv_;
    std::vector<QVec> hull_normals_;
};

}  // namespace gptlab
