#pragma once
// Planar multiply-connected domains with tagged circular boundary arcs,
// Schwarz reflection doubling, and structured triangulations.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pdc/util.hpp"

namespace pdc {

// angles are radians; an arc is the set {c + r e^{it}, t in (t0, t1)}, t1 > t0
struct Arc {
  int circle = 0;  // 0 = outer circle, 1.. = holes
  double t0 = 0.0, t1 = 0.0;
  bool contains(double theta, double tol = 0.0) const;
  double length_angle() const { return t1 - t0; }
};

struct ArcSet {
  std::vector<Arc> arcs;
  bool contains(int circle, double theta, double tol = 0.0) const;
  ArcSet widened(double dt) const;
};

struct Circle {
  cplx center{0.0, 0.0};
  double radius = 1.0;
  double theta_of(cplx z) const { return std::arg(z - center); }
  cplx point(double theta) const {
    return center + radius * std::exp(I * theta);
  }
  // Schwarz reflection across this circle
  cplx reflect(cplx z) const {
    return center + radius * radius / std::conj(z - center);
  }
};

// Optional straight chord cut: keep the part of the disk with
// Im(e^{-i rot} (z - center)) > level. Used for the physical subdomain whose
// non-arc boundary segment lies in the interior of the ambient disk.
struct ChordCut {
  double level = 0.0;
  double rot = 0.0;  // rotation of the cutting line
  bool keeps(cplx z, cplx center, double tol = 0.0) const {
    return std::imag((z - center) * std::exp(-I * rot)) > level - tol;
  }
};

struct DomainSpec {
  Circle outer;
  std::vector<Circle> holes;
  ArcSet gamma;    // hidden part of the boundary
  ArcSet gamma0;   // Gamma_0, compactly contains gamma
  std::optional<ChordCut> chord;           // physical segment domain M0
  std::optional<std::pair<double, double>> removed_disk;  // (theta_q0, delta)
};

// boundary piece tags carried by mesh edges
enum class BTag : int { gamma = 0, gamma0 = 1, accessible = 2, chord = 3, notch = 4 };

struct Domain {
  Circle outer;
  std::vector<Circle> holes;
  ArcSet gamma, gamma0;
  std::optional<ChordCut> chord;
  std::optional<std::pair<double, double>> removed_disk;

  bool contains(cplx z, double tol = 0.0) const;
  // tag of a boundary point on a given circle
  BTag tag_circle_point(int circle, double theta) const;
  double min_radius() const;
  cplx q0() const {
    if (!removed_disk) throw error("domain has no removed disk");
    return outer.point(removed_disk->first);
  }
};

Domain build_domain(const DomainSpec& spec);

// ---------------------------------------------------------------------------
// Mesh
// ---------------------------------------------------------------------------

struct BoundaryEdge {
  int v0 = 0, v1 = 0;
  int circle = -1;  // -1: chord or notch segment
  BTag tag = BTag::accessible;
};

struct Mesh {
  std::vector<cplx> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<BoundaryEdge> boundary_edges;
  double h_target = 0.0;

  std::size_t nv() const { return vertices.size(); }
  std::size_t nt() const { return triangles.size(); }
  std::size_t ne() const;               // number of unique edges
  int euler_characteristic() const;     // V - E + F
  double max_edge_length() const;
  double min_angle() const;             // degrees
  std::vector<bool> boundary_vertex_mask() const;
  double area() const;
};

struct MeshOptions {
  double h = 0.1;               // target edge length away from refinement
  double h_fine = 0.0;          // optional local refinement target (0 = off)
  cplx refine_center{0.0, 0.0}; // center of the refined band
  double refine_radius = 0.0;   // band half-width around |z-center|
};

Mesh mesh_domain(const Domain& d, const MeshOptions& opt);
inline Mesh mesh_domain(const Domain& d, double h) {
  MeshOptions o;
  o.h = h;
  return mesh_domain(d, o);
}

void export_mesh(const Mesh& m, const std::filesystem::path& dir,
                 const std::string& stem);

// ---------------------------------------------------------------------------
// Doubling
// ---------------------------------------------------------------------------

enum class Sheet { original, mirror };

struct DoubledDomain {
  Domain base;
  // removed ball on the double (doubled across the outer circle)
  std::optional<std::pair<double, double>> removed_disk;

  cplx involution(cplx z) const { return base.outer.reflect(z); }
};

DoubledDomain make_double(const Domain& d);

// Two copies of a base mesh glued along the outer-circle boundary; functions
// on the double are (value on +, value on -) with shared seam values.
struct DoubledMesh {
  Mesh base;
  std::vector<int> plus_id;   // base vertex -> global id on original sheet
  std::vector<int> minus_id;  // base vertex -> global id on mirror sheet
  std::vector<bool> seam;     // base vertex lies on the glued circle
  int n_global = 0;
  // triangles of the doubled surface in global ids
  std::vector<std::array<int, 3>> triangles;
  // vertices carry the base coordinates of their chart
  std::vector<cplx> chart_coords;
  std::vector<int> sheet_of;  // 0 plus, 1 minus (seam: 0)
};

DoubledMesh build_doubled_mesh(const Mesh& base, const Circle& glue_circle);

struct ParityCheck {
  double trace_norm = 0.0;  // measured violation of the parity precondition
  bool ok = true;
};

// odd/even reflection of vertex samples; returns global vector on the double
std::vector<cplx> reflect_function(const std::vector<cplx>& u, bool odd,
                                   const DoubledMesh& dm, ParityCheck* check,
                                   double tol);

// conjugate extension F(R(p)) = conj(F(p)) of boundary-real holomorphic data
std::vector<cplx> conjugate_extend(const std::vector<cplx>& f,
                                   const DoubledMesh& dm, double tol);

}  // namespace pdc
