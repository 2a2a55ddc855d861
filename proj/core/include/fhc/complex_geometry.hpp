#ifndef FHC_COMPLEX_GEOMETRY_HPP
#define FHC_COMPLEX_GEOMETRY_HPP

#include <complex>
#include <span>
#include <vector>

namespace fhc {

using ComplexPoint = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

//
// Convex compact subset of the plane stored by its extreme points.
//
// Vertices are kept counterclockwise, starting from the leftmost-lowest
// point. Singletons and segments are represented by one or two vertices.
// Support functions follow the convention H_K(z) = sup{Re(z u) : u in K},
// so the indicator direction e^{i theta} pairs with conj(e^{i theta}) in the
// Euclidean sense.
//
class ConvexCompact {
 public:
  // Convex hull of a nonempty point list (monotone chain). Throws InputError
  // on empty input or non-finite coordinates.
  static ConvexCompact hull(std::span<const ComplexPoint> points);
  static ConvexCompact point(ComplexPoint p);
  static ConvexCompact segment(ComplexPoint a, ComplexPoint b);

  const std::vector<ComplexPoint>& vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }

  // sup over K of Re(z u); exact for polytopes (attained at a vertex).
  double support(ComplexPoint z) const noexcept;
  double indicator(double theta) const noexcept;

  ConvexCompact translated(ComplexPoint alpha) const;

  // max |Im(u) - Im(v)| over u, v in K.
  double vertical_extent() const noexcept;
  // max |u| over K, the exponential type of anything with this diagram.
  double max_modulus() const noexcept;

  // Directions z (unit modulus) whose support values decide containment of a
  // set in this one: outward edge normals, mapped to the Re(z u) convention.
  std::vector<ComplexPoint> facet_directions() const;

 private:
  explicit ConvexCompact(std::vector<ComplexPoint> vertices)
      : vertices_(std::move(vertices)) {}

  std::vector<ComplexPoint> vertices_;
};

struct Containment {
  bool inside = true;
  // Angle theta of the direction e^{i theta} with the largest violation of
  // H_inner <= H_outer (meaningful only when !inside).
  double witness_theta = 0.0;
  double violation = 0.0;
};

// K subset of L, tested through support-function inequalities at L's facet
// directions, K's vertex directions and a 360-direction sweep.
Containment contains(const ConvexCompact& outer, const ConvexCompact& inner,
                     double tol = 1e-12);

// Vertex-set equality up to tol (absolute, per coordinate).
bool same_vertices(const ConvexCompact& a, const ConvexCompact& b, double tol = 0.0);

// Free-function forms of the geometric operations.
inline double support_function(const ConvexCompact& K, ComplexPoint z) { return K.support(z); }
inline double indicator_of_set(const ConvexCompact& K, double theta) { return K.indicator(theta); }
inline ConvexCompact translate_set(const ConvexCompact& K, ComplexPoint alpha) { return K.translated(alpha); }
inline double vertical_extent(const ConvexCompact& K) { return K.vertical_extent(); }
ConvexCompact hull(std::span<const ComplexPoint> points);

}  // namespace fhc

#endif  // FHC_COMPLEX_GEOMETRY_HPP
