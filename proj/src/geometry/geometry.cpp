#include "pdc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace pdc {

namespace {

double wrap2pi(double t) {
  t = std::fmod(t, 2.0 * PI);
  if (t < 0) t += 2.0 * PI;
  return t;
}

double tri_area2(cplx a, cplx b, cplx c) {
  return (b.real() - a.real()) * (c.imag() - a.imag()) -
         (b.imag() - a.imag()) * (c.real() - a.real());
}

}  // namespace

bool Arc::contains(double theta, double tol) const {
  const double span = t1 - t0;
  const double d = wrap2pi(theta - t0);
  return d > -tol && d < span + tol;
}

bool ArcSet::contains(int circle, double theta, double tol) const {
  for (const auto& a : arcs)
    if (a.circle == circle && a.contains(theta, tol)) return true;
  return false;
}

ArcSet ArcSet::widened(double dt) const {
  ArcSet w = *this;
  for (auto& a : w.arcs) {
    a.t0 -= dt;
    a.t1 += dt;
  }
  return w;
}

bool Domain::contains(cplx z, double tol) const {
  if (std::abs(z - outer.center) > outer.radius + tol) return false;
  for (const auto& h : holes)
    if (std::abs(z - h.center) < h.radius - tol) return false;
  if (chord && !chord->keeps(z, outer.center, tol)) return false;
  if (removed_disk && std::abs(z - q0()) < removed_disk->second - tol)
    return false;
  return true;
}

BTag Domain::tag_circle_point(int circle, double theta) const {
  if (gamma.contains(circle, theta)) return BTag::gamma;
  if (gamma0.contains(circle, theta)) return BTag::gamma0;
  return BTag::accessible;
}

double Domain::min_radius() const {
  double r = outer.radius;
  for (const auto& h : holes) r = std::min(r, h.radius);
  return r;
}

Domain build_domain(const DomainSpec& spec) {
  Domain d;
  d.outer = spec.outer;
  d.holes = spec.holes;
  d.gamma = spec.gamma;
  d.gamma0 = spec.gamma0;
  d.chord = spec.chord;
  d.removed_disk = spec.removed_disk;

  if (d.outer.radius <= 0) throw error("build_domain: outer radius <= 0");
  for (const auto& h : d.holes) {
    if (h.radius <= 0) throw error("build_domain: hole radius <= 0");
    if (std::abs(h.center - d.outer.center) + h.radius >= d.outer.radius)
      throw error("build_domain: hole not strictly inside outer circle");
    for (const auto& g : d.holes)
      if (&g != &h && std::abs(g.center - h.center) < g.radius + h.radius &&
          std::abs(g.center - h.center) > 0)
        throw error("build_domain: overlapping circles");
  }

  // Gamma must sit strictly inside Gamma_0, and an open arc of the outer
  // circle has to stay outside Gamma_0.
  double covered = 0.0;
  for (const auto& a : d.gamma0.arcs) {
    if (a.t1 <= a.t0) throw error("build_domain: empty arc");
    if (a.circle == 0) covered += a.length_angle();
  }
  if (covered >= 2.0 * PI - 1e-9)
    throw error("build_domain: no open complement (Gamma_0 covers the outer circle)");
  for (const auto& a : d.gamma.arcs) {
    const double mid = 0.5 * (a.t0 + a.t1);
    if (!d.gamma0.contains(a.circle, a.t0 - 1e-12) ||
        !d.gamma0.contains(a.circle, a.t1 + 1e-12) ||
        !d.gamma0.contains(a.circle, mid))
      throw error("build_domain: Gamma not compactly contained in Gamma_0");
  }
  if (d.removed_disk) {
    const double tq = d.removed_disk->first;
    if (d.gamma.contains(0, tq))
      throw error("build_domain: removed disk centered on Gamma");
  }
  return d;
}

// ---------------------------------------------------------------------------
// Mesh queries
// ---------------------------------------------------------------------------

std::size_t Mesh::ne() const {
  std::set<std::pair<int, int>> edges;
  for (const auto& t : triangles)
    for (int k = 0; k < 3; ++k) {
      int a = t[k], b = t[(k + 1) % 3];
      edges.insert({std::min(a, b), std::max(a, b)});
    }
  return edges.size();
}

int Mesh::euler_characteristic() const {
  return static_cast<int>(nv()) - static_cast<int>(ne()) +
         static_cast<int>(nt());
}

double Mesh::max_edge_length() const {
  double m = 0.0;
  for (const auto& t : triangles)
    for (int k = 0; k < 3; ++k)
      m = std::max(m, std::abs(vertices[t[k]] - vertices[t[(k + 1) % 3]]));
  return m;
}

double Mesh::min_angle() const {
  double m = 180.0;
  for (const auto& t : triangles) {
    for (int k = 0; k < 3; ++k) {
      const cplx a = vertices[t[k]];
      const cplx b = vertices[t[(k + 1) % 3]];
      const cplx c = vertices[t[(k + 2) % 3]];
      const cplx u = b - a, v = c - a;
      const double ang = std::acos(std::clamp(
          (u.real() * v.real() + u.imag() * v.imag()) / (std::abs(u) * std::abs(v)),
          -1.0, 1.0));
      m = std::min(m, ang * 180.0 / PI);
    }
  }
  return m;
}

std::vector<bool> Mesh::boundary_vertex_mask() const {
  std::vector<bool> mask(nv(), false);
  for (const auto& e : boundary_edges) mask[e.v0] = mask[e.v1] = true;
  return mask;
}

double Mesh::area() const {
  double s = 0.0;
  for (const auto& t : triangles)
    s += 0.5 * tri_area2(vertices[t[0]], vertices[t[1]], vertices[t[2]]);
  return s;
}

// ---------------------------------------------------------------------------
// Polar ring mesher with optional chord cut and removed boundary ball
// ---------------------------------------------------------------------------

namespace {

struct RingMesher {
  const Domain& dom;
  const MeshOptions& opt;

  double local_h(double r) const {
    double h = opt.h;
    if (opt.h_fine > 0 && opt.refine_radius > 0) {
      const double rc = std::abs(opt.refine_center - dom.outer.center);
      const double dist = std::abs(r - rc) - opt.refine_radius;
      if (dist <= 0)
        h = opt.h_fine;
      else
        h = std::min(opt.h, opt.h_fine + 0.7 * dist);
    }
    return h;
  }

  std::vector<double> ring_radii(double r_in, double r_out) const {
    std::vector<double> rs{r_in};
    double r = r_in;
    while (true) {
      const double step = local_h((r + std::min(r_out, r + local_h(r))) * 0.5);
      r += step;
      if (r >= r_out - 0.55 * step) break;
      rs.push_back(r);
    }
    rs.push_back(r_out);
    return rs;
  }

  int ring_count(double r) const {
    if (r <= 0) return 1;
    return std::max<int>(6, static_cast<int>(std::lround(2.0 * PI * r / local_h(r))));
  }
};

// triangulate the band between two concentric closed vertex loops
void bridge_rings(const std::vector<int>& inner, const std::vector<int>& outer,
                  std::vector<std::array<int, 3>>& tris) {
  const int na = static_cast<int>(inner.size());
  const int nb = static_cast<int>(outer.size());
  int i = 0, j = 0;
  while (i < na || j < nb) {
    const double fa = static_cast<double>(i + 1) / na;
    const double fb = static_cast<double>(j + 1) / nb;
    if (j >= nb || (i < na && fa <= fb)) {
      tris.push_back({inner[i % na], outer[j % nb], inner[(i + 1) % na]});
      ++i;
    } else {
      tris.push_back({inner[i % na], outer[j % nb], outer[(j + 1) % nb]});
      ++j;
    }
  }
}

struct RawMesh {
  std::vector<cplx> v;
  std::vector<std::array<int, 3>> t;
  std::vector<int> circle_of;  // -1 interior, else circle id of the vertex
};

RawMesh polar_mesh(const Domain& dom, const MeshOptions& opt) {
  RingMesher rm{dom, opt};
  RawMesh m;
  const cplx c = dom.outer.center;
  const bool annulus = !dom.holes.empty();
  const double r_in = annulus ? dom.holes[0].radius : 0.0;
  const double r_out = dom.outer.radius;
  const auto radii = rm.ring_radii(r_in, r_out);

  std::vector<std::vector<int>> rings;
  for (std::size_t k = 0; k < radii.size(); ++k) {
    const double r = radii[k];
    std::vector<int> ring;
    if (r <= 0) {
      ring.push_back(static_cast<int>(m.v.size()));
      m.v.push_back(c);
      m.circle_of.push_back(-1);
    } else {
      const int n = rm.ring_count(r);
      for (int q = 0; q < n; ++q) {
        const double th = 2.0 * PI * q / n;
        ring.push_back(static_cast<int>(m.v.size()));
        m.v.push_back(c + r * std::exp(I * th));
        int cid = -1;
        if (k == 0 && annulus) cid = 1;
        if (k + 1 == radii.size()) cid = 0;
        m.circle_of.push_back(cid);
      }
    }
    rings.push_back(std::move(ring));
  }

  for (std::size_t k = 0; k + 1 < rings.size(); ++k) {
    if (rings[k].size() == 1) {
      const auto& out = rings[k + 1];
      const int n = static_cast<int>(out.size());
      for (int q = 0; q < n; ++q)
        m.t.push_back({rings[k][0], out[q], out[(q + 1) % n]});
    } else {
      bridge_rings(rings[k], rings[k + 1], m.t);
    }
  }
  return m;
}

// Clip a raw mesh against {sdf > 0}: snap near vertices onto the zero set,
// drop outside triangles, drop degenerate slivers.
template <class Sdf, class Project>
void clip_mesh(RawMesh& m, double snap_band, Sdf&& sdf, Project&& project) {
  for (std::size_t i = 0; i < m.v.size(); ++i) {
    const double d = sdf(m.v[i]);
    if (std::abs(d) < snap_band) {
      // keep exact circle vertices on their circle: project may move them
      m.v[i] = project(m.v[i]);
    }
  }
  std::vector<std::array<int, 3>> kept;
  for (const auto& t : m.t) {
    const cplx a = m.v[t[0]], b = m.v[t[1]], cc = m.v[t[2]];
    const cplx cen = (a + b + cc) / 3.0;
    if (sdf(cen) <= 0) continue;
    if (std::abs(tri_area2(a, b, cc)) < 1e-14) continue;
    kept.push_back(t);
  }
  m.t = std::move(kept);
}

void compact(RawMesh& m) {
  std::vector<int> remap(m.v.size(), -1);
  std::vector<cplx> nv;
  std::vector<int> nc;
  for (auto& t : m.t)
    for (int& id : t) {
      if (remap[id] < 0) {
        remap[id] = static_cast<int>(nv.size());
        nv.push_back(m.v[id]);
        nc.push_back(m.circle_of[id]);
      }
      id = remap[id];
    }
  m.v = std::move(nv);
  m.circle_of = std::move(nc);
}

}  // namespace

Mesh mesh_domain(const Domain& d, const MeshOptions& opt) {
  if (opt.h <= 0) throw error("mesh_domain: nonpositive h");
  if (opt.h >= d.min_radius() / 4.0)
    throw error("mesh_domain: h too coarse for this geometry (need h < min radius / 4)");

  RawMesh raw = polar_mesh(d, opt);
  const cplx c = d.outer.center;

  // chord cut
  if (d.chord) {
    const ChordCut cut = *d.chord;
    const cplx rot = std::exp(-I * cut.rot);
    auto sdf = [&](cplx z) { return std::imag((z - c) * rot) - cut.level; };
    // corner angles where the chord meets the outer circle
    const double s = cut.level / d.outer.radius;
    if (std::abs(s) < 1.0) {
      const double t1 = std::asin(s), t2 = PI - std::asin(s);
      for (std::size_t i = 0; i < raw.v.size(); ++i) {
        if (raw.circle_of[i] != 0) continue;
        double th = wrap2pi(std::arg((raw.v[i] - c) / d.outer.radius)) ;
        for (double tc : {wrap2pi(t1 + cut.rot), wrap2pi(t2 + cut.rot)}) {
          double dd = std::abs(wrap2pi(th - tc + PI) - PI);
          if (dd * d.outer.radius < 0.6 * opt.h)
            raw.v[i] = d.outer.point(tc);
        }
      }
    }
    auto project = [&](cplx z) {
      if (std::abs(std::abs(z - c) - d.outer.radius) < 1e-9) return z;  // circle pts stay
      const cplx w = (z - c) * rot;
      return c + (cplx{w.real(), cut.level}) / rot;
    };
    clip_mesh(raw, 0.45 * opt.h, sdf, project);
  }

  // removed boundary ball
  if (d.removed_disk) {
    const cplx q = d.q0();
    const double delta = d.removed_disk->second;
    auto sdf = [&](cplx z) { return std::abs(z - q) - delta; };
    // corners where the notch circle meets the outer circle
    std::vector<cplx> corners;
    {
      // intersection of |z-c|=R and |z-q|=delta
      const double R = d.outer.radius;
      const cplx dvec = q - c;
      const double dd = std::abs(dvec);
      const double aa = (R * R - delta * delta + dd * dd) / (2 * dd);
      const double h2 = R * R - aa * aa;
      if (h2 > 0) {
        const cplx base = c + aa * dvec / dd;
        const cplx off = I * dvec / dd * std::sqrt(h2);
        corners = {base + off, base - off};
      }
    }
    for (std::size_t i = 0; i < raw.v.size(); ++i) {
      if (raw.circle_of[i] != 0) continue;
      for (cplx cr : corners)
        if (std::abs(raw.v[i] - cr) < 0.6 * opt.h) raw.v[i] = cr;
    }
    auto project = [&](cplx z) {
      if (std::abs(std::abs(z - c) - d.outer.radius) < 1e-9) return z;
      const cplx u = z - q;
      return q + delta * u / std::abs(u);
    };
    const double band = 0.45 * RingMesher{d, opt}.local_h(std::abs(q - c));
    clip_mesh(raw, band, sdf, project);
  }

  compact(raw);

  Mesh mesh;
  mesh.vertices = raw.v;
  mesh.triangles = raw.t;
  mesh.h_target = opt.h;

  // enforce CCW orientation
  for (auto& t : mesh.triangles)
    if (tri_area2(mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]) < 0)
      std::swap(t[1], t[2]);

  // boundary edges: adjacency count 1
  std::map<std::pair<int, int>, int> count;
  for (const auto& t : mesh.triangles)
    for (int k = 0; k < 3; ++k) {
      int a = t[k], b = t[(k + 1) % 3];
      count[{std::min(a, b), std::max(a, b)}]++;
    }
  const double tol = 1e-9 * d.outer.radius;
  auto on_circle = [&](cplx z, const Circle& cc) {
    return std::abs(std::abs(z - cc.center) - cc.radius) < tol;
  };
  for (const auto& [e, n] : count) {
    if (n != 1) continue;
    BoundaryEdge be;
    be.v0 = e.first;
    be.v1 = e.second;
    const cplx a = mesh.vertices[be.v0], b = mesh.vertices[be.v1];
    const cplx mid = 0.5 * (a + b);
    bool classified = false;
    if (on_circle(a, d.outer) && on_circle(b, d.outer)) {
      be.circle = 0;
      be.tag = d.tag_circle_point(0, std::arg(mid - d.outer.center));
      classified = true;
    }
    if (!classified)
      for (std::size_t hidx = 0; hidx < d.holes.size(); ++hidx)
        if (on_circle(a, d.holes[hidx]) && on_circle(b, d.holes[hidx])) {
          be.circle = static_cast<int>(hidx) + 1;
          be.tag = d.tag_circle_point(be.circle, std::arg(mid - d.holes[hidx].center));
          classified = true;
          break;
        }
    if (!classified && d.chord) {
      const cplx rot = std::exp(-I * d.chord->rot);
      if (std::abs(std::imag((a - d.outer.center) * rot) - d.chord->level) < 10 * tol &&
          std::abs(std::imag((b - d.outer.center) * rot) - d.chord->level) < 10 * tol) {
        be.circle = -1;
        be.tag = BTag::chord;
        classified = true;
      }
    }
    if (!classified && d.removed_disk) {
      const cplx q = d.q0();
      const double delta = d.removed_disk->second;
      if (std::abs(std::abs(a - q) - delta) < 10 * tol &&
          std::abs(std::abs(b - q) - delta) < 10 * tol) {
        be.circle = -1;
        be.tag = BTag::notch;
        classified = true;
      }
    }
    if (!classified) throw error("mesh_domain: unclassifiable boundary edge (mesher failure)");
    mesh.boundary_edges.push_back(be);
  }

  if (mesh.min_angle() < 8.0)
    throw error("mesh_domain: degenerate elements (min angle < 8 deg)");
  return mesh;
}

void export_mesh(const Mesh& m, const std::filesystem::path& dir,
                 const std::string& stem) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / (stem + ".nodes.txt"));
    for (std::size_t i = 0; i < m.nv(); ++i)
      out << i << " " << fmt_g17(m.vertices[i].real()) << " "
          << fmt_g17(m.vertices[i].imag()) << "\n";
  }
  {
    std::ofstream out(dir / (stem + ".elements.txt"));
    for (std::size_t i = 0; i < m.nt(); ++i)
      out << i << " " << m.triangles[i][0] << " " << m.triangles[i][1] << " "
          << m.triangles[i][2] << "\n";
  }
  {
    std::ofstream out(dir / (stem + ".boundary.txt"));
    for (const auto& e : m.boundary_edges)
      out << e.v0 << " " << e.v1 << " " << e.circle << " "
          << static_cast<int>(e.tag) << "\n";
  }
}

// ---------------------------------------------------------------------------
// Doubling
// ---------------------------------------------------------------------------

DoubledDomain make_double(const Domain& d) {
  DoubledDomain dd;
  dd.base = d;
  dd.removed_disk = d.removed_disk;
  return dd;
}

DoubledMesh build_doubled_mesh(const Mesh& base, const Circle& glue) {
  DoubledMesh dm;
  dm.base = base;
  const double tol = 1e-9 * glue.radius;
  dm.seam.assign(base.nv(), false);
  for (std::size_t i = 0; i < base.nv(); ++i)
    dm.seam[i] = std::abs(std::abs(base.vertices[i] - glue.center) - glue.radius) < tol;

  dm.plus_id.resize(base.nv());
  dm.minus_id.resize(base.nv());
  for (std::size_t i = 0; i < base.nv(); ++i) {
    dm.plus_id[i] = static_cast<int>(dm.chart_coords.size());
    dm.chart_coords.push_back(base.vertices[i]);
    dm.sheet_of.push_back(0);
  }
  for (std::size_t i = 0; i < base.nv(); ++i) {
    if (dm.seam[i]) {
      dm.minus_id[i] = dm.plus_id[i];
    } else {
      dm.minus_id[i] = static_cast<int>(dm.chart_coords.size());
      dm.chart_coords.push_back(base.vertices[i]);
      dm.sheet_of.push_back(1);
    }
  }
  dm.n_global = static_cast<int>(dm.chart_coords.size());
  for (const auto& t : base.triangles)
    dm.triangles.push_back({dm.plus_id[t[0]], dm.plus_id[t[1]], dm.plus_id[t[2]]});
  for (const auto& t : base.triangles)
    dm.triangles.push_back({dm.minus_id[t[0]], dm.minus_id[t[1]], dm.minus_id[t[2]]});
  return dm;
}

std::vector<cplx> reflect_function(const std::vector<cplx>& u, bool odd,
                                   const DoubledMesh& dm, ParityCheck* check,
                                   double tol) {
  if (u.size() != dm.base.nv()) throw error("reflect_function: size mismatch");
  double trace = 0.0, sup = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    sup = std::max(sup, std::abs(u[i]));
    if (dm.seam[i]) trace = std::max(trace, std::abs(u[i]));
  }
  ParityCheck pc;
  pc.trace_norm = trace;
  pc.ok = !odd || trace <= tol * std::max(sup, 1e-300);
  if (check) *check = pc;

  std::vector<cplx> g(dm.n_global);
  for (std::size_t i = 0; i < u.size(); ++i) {
    cplx v = u[i];
    if (odd && dm.seam[i]) v = 0.0;  // exact parity by construction
    g[dm.plus_id[i]] = v;
    g[dm.minus_id[i]] = odd ? -v : v;
    if (odd && dm.seam[i]) g[dm.plus_id[i]] = 0.0;
  }
  return g;
}

std::vector<cplx> conjugate_extend(const std::vector<cplx>& f,
                                   const DoubledMesh& dm, double tol) {
  if (f.size() != dm.base.nv()) throw error("conjugate_extend: size mismatch");
  double sup = 0.0, im = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    sup = std::max(sup, std::abs(f[i]));
    if (dm.seam[i]) im = std::max(im, std::abs(f[i].imag()));
  }
  if (im > tol * std::max(sup, 1e-300))
    throw error("conjugate_extend: non-real trace on the glued arc beyond tolerance");
  std::vector<cplx> g(dm.n_global);
  for (std::size_t i = 0; i < f.size(); ++i) {
    g[dm.plus_id[i]] = f[i];
    g[dm.minus_id[i]] = std::conj(f[i]);
  }
  return g;
}

}  // namespace pdc
