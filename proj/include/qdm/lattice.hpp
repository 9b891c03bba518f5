#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "qdm/errors.hpp"

namespace qdm {

enum class Boundary { open, torus };

/// A finite patch of the oriented triangular lattice.
///
/// Concrete coordinates: vertices sit at integer pairs (i, j) with geometric
/// position (i + j/2, j*sqrt(3)/2). Three edge classes leave each vertex,
/// all with positive horizontal component:
///   E : (i,j) -> (i+1,j)     NE : (i,j) -> (i,j+1)     SE : (i,j) -> (i+1,j-1)
/// Faces are the up/down triangles
///   U(i,j) = [(i,j), (i+1,j), (i,j+1)]   (counterclockwise)
///   D(i,j) = [(i+1,j), (i+1,j+1), (i,j+1)]
/// The dual edge e* crosses e from its right face to its left face.
/// On a torus, indices wrap modulo (width, height); open patches keep only
/// edges and faces whose vertices all lie in the grid.
class Patch {
  public:
    enum EdgeClass { E = 0, NE = 1, SE = 2 };
    enum FaceKind { U = 0, D = 1 };

    struct EdgeRec {
        int v0 = -1, v1 = -1;  // oriented: v0 -> v1
        int cls = 0;
        std::array<int, 2> anchor{};  // (i, j) of the class origin vertex
        int left_face = -1, right_face = -1;
    };
    struct FaceRec {
        int kind = 0;
        std::array<int, 2> anchor{};
        std::array<int, 3> verts{};  // counterclockwise
        std::array<int, 3> edges{};  // edges[k] joins verts[k], verts[(k+1)%3]
    };

    static std::shared_ptr<const Patch> make(int width, int height, Boundary boundary);

    int width() const { return width_; }
    int height() const { return height_; }
    Boundary boundary() const { return boundary_; }

    int vertex_count() const { return static_cast<int>(vertex_ij_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int face_count() const { return static_cast<int>(faces_.size()); }

    const std::array<int, 2>& vertex_ij(int v) const { return vertex_ij_[v]; }
    const EdgeRec& edge(int e) const { return edges_[e]; }
    const FaceRec& face(int f) const { return faces_[f]; }

    int vertex_at(int i, int j) const;            // -1 when absent
    int edge_at(int cls, int i, int j) const;     // -1 when absent
    int face_at(int kind, int i, int j) const;    // -1 when absent

    /// Faces around a vertex in counterclockwise order starting from the
    /// east (slot k holds the face between rays 60k and 60(k+1) degrees);
    /// -1 entries on open boundaries.
    const std::array<int, 6>& faces_around(int v) const { return faces_around_[v]; }
    /// Edge separating faces_around(v)[k] from faces_around(v)[(k+1)%6].
    const std::array<int, 6>& spokes(int v) const { return spokes_[v]; }

    bool vertex_interior(int v) const;  // all six faces and spokes present
    bool vertex_on_face(int v, int f) const;

    std::string dump() const;  // deterministic text rendering for debugging

  private:
    Patch() = default;
    int wrap_i(int i) const;
    int wrap_j(int j) const;

    int width_ = 0, height_ = 0;
    Boundary boundary_ = Boundary::open;
    std::vector<std::array<int, 2>> vertex_ij_;
    std::vector<EdgeRec> edges_;
    std::vector<FaceRec> faces_;
    std::vector<int> vertex_id_;                 // grid -> id
    std::vector<std::array<int, 3>> edge_id_;    // per vertex-grid slot, by class
    std::vector<std::array<int, 2>> face_id_;    // per grid slot, by kind
    std::vector<std::array<int, 6>> faces_around_;
    std::vector<std::array<int, 6>> spokes_;
};

using PatchPtr = std::shared_ptr<const Patch>;

/// A site s = (v, f) with v on the boundary of f.
struct Site {
    int vertex = -1;
    int face = -1;
    bool operator==(const Site&) const = default;
};

enum class TriangleKind { direct, dual };

/// Direct triangle: sites share the face, edge joins their vertices.
/// Dual triangle: sites share the vertex, e* joins their faces.
struct Triangle {
    TriangleKind kind = TriangleKind::direct;
    Site s0, s1;
    int edge = -1;
    bool operator==(const Triangle&) const = default;
};

/// Flip a triangle in place: (s0, s1, e) -> (s1, s0, e).
Triangle opposite(const Triangle& t);

void validate_triangle(const Patch& p, const Triangle& t);

/// +1 positive, -1 negative.  Direct triangles are positive when the shared
/// face lies to the right of the directed edge; dual triangles when the
/// shared vertex lies to the left of the directed dual edge.
int triangle_sign(const Patch& p, const Triangle& t);

/// Unwrapped displacement of the site vertex across the triangle (zero for
/// dual triangles); used to compare homotopy classes on tori.
std::array<int, 2> triangle_lift(const Patch& p, const Triangle& t);

enum class Orientation { positive, negative, mixed };

class Ribbon {
  public:
    Ribbon() = default;
    explicit Ribbon(std::vector<Triangle> triangles);  // no validation

    static Ribbon validated(const Patch& p, std::vector<Triangle> triangles);

    bool empty() const { return triangles_.empty(); }
    int length() const { return static_cast<int>(triangles_.size()); }
    const std::vector<Triangle>& triangles() const { return triangles_; }
    const Triangle& at(int k) const { return triangles_[k]; }

    Site start() const;  // throws EmptyRibbon
    Site end() const;

    std::vector<int> support() const;  // sorted edge ids
    Ribbon prefix(int n) const;        // first n triangles
    Ribbon suffix(int n) const;        // all but the first n

    std::array<int, 2> lift(const Patch& p) const;  // cumulative vertex lift

    bool operator==(const Ribbon&) const = default;

  private:
    std::vector<Triangle> triangles_;
};

/// Requires end(r1) == start(r2) and edge-disjointness.
Ribbon concat(const Patch& p, const Ribbon& r1, const Ribbon& r2);
Ribbon reverse(const Ribbon& r);
Orientation orientation(const Patch& p, const Ribbon& r);  // throws EmptyRibbon

/// All valid triangles with d0 = s (at most two direct and two dual);
/// `positive_only` filters by triangle_sign.
std::vector<Triangle> triangles_from(const Patch& p, const Site& s, bool positive_only = false);
/// All valid triangles with d1 = s.
std::vector<Triangle> triangles_into(const Patch& p, const Site& s, bool positive_only = false);

/// The unique counterclockwise closed direct ribbon around f(s) with end
/// sites s (three triangles), and the counterclockwise closed dual ribbon
/// around v(s) (six triangles). Throw BoundaryTouched near open boundaries.
Ribbon closed_direct_ribbon(const Patch& p, const Site& s);
Ribbon closed_dual_ribbon(const Patch& p, const Site& s);

struct RibbonWalkOptions {
    bool positive_only = false;
    bool require_distinct_endpoints = false;  // distinct vertex and face
    std::vector<int> forbidden_edges;         // extra exclusions
    int retries = 64;
};

/// Seeded self-avoiding random ribbon of the given length starting at s0.
/// Throws Stuck when no extension is found within the retry budget.
Ribbon random_ribbon(const Patch& p, const Site& s0, int length, std::uint64_t seed,
                     RibbonWalkOptions opts = {});

/// Seeded random interior site.
Site random_site(const Patch& p, std::uint64_t seed);

struct BridgePair {
    Ribbon r1;      // first arm
    Ribbon r2;      // second arm
    Ribbon bridge;  // xi with concat(r1, xi, reverse(r2)) a valid ribbon
};

/// Generates the three pieces by splitting one valid random ribbon, so the
/// composite sigma = r1 xi r2-bar is valid by construction.
BridgePair bridge_pair(const Patch& p, std::uint64_t seed, int arm_len = 3, int bridge_len = 3);

}  // namespace qdm
