#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pdc/geometry.hpp"

using namespace pdc;

namespace {

DomainSpec unit_disk_spec() {
  DomainSpec s;
  s.outer = Circle{{0, 0}, 1.0};
  s.gamma.arcs = {{0, 0.0, PI / 2}};
  s.gamma0.arcs = {{0, -0.1, PI / 2 + 0.1}};
  return s;
}

}  // namespace

TEST_CASE("build_domain validates arc structure") {
  CHECK_NOTHROW(build_domain(unit_disk_spec()));

  DomainSpec annulus = unit_disk_spec();
  annulus.holes = {Circle{{0, 0}, 0.3}};
  CHECK_NOTHROW(build_domain(annulus));

  DomainSpec bad = unit_disk_spec();
  bad.gamma0.arcs = {{0, 0.0, 2 * PI}};
  CHECK_THROWS_WITH_AS(build_domain(bad),
                       doctest::Contains("no open complement"), error);

  DomainSpec overlap = unit_disk_spec();
  overlap.holes = {Circle{{0.5, 0}, 0.3}, Circle{{0.3, 0}, 0.3}};
  CHECK_THROWS_AS(build_domain(overlap), error);
}

TEST_CASE("disk mesh: Euler characteristic 1, tagged boundary, snapped vertices") {
  const Domain d = build_domain(unit_disk_spec());
  const Mesh m = mesh_domain(d, 0.1);
  CHECK(m.euler_characteristic() == 1);
  CHECK(m.nt() > 150);  // ~O(300) triangles at h=0.1
  CHECK(m.nt() < 800);
  CHECK(m.max_edge_length() <= 1.5 * 0.1);

  // every boundary edge carries a tag and lies on the circle
  int on_gamma = 0;
  for (const auto& e : m.boundary_edges) {
    CHECK(e.circle == 0);
    for (int v : {e.v0, e.v1})
      CHECK(std::abs(std::abs(m.vertices[v]) - 1.0) < 1e-12);
    if (e.tag == BTag::gamma) ++on_gamma;
  }
  CHECK(on_gamma > 0);

  CHECK_THROWS_AS(mesh_domain(d, 10.0), error);
}

TEST_CASE("annulus mesh: Euler characteristic 0") {
  DomainSpec s;
  s.outer = Circle{{0, 0}, 1.0};
  s.holes = {Circle{{0, 0}, 0.3}};
  s.gamma.arcs = {{0, 0.0, PI / 2}};
  s.gamma0.arcs = {{0, -0.1, PI / 2 + 0.1}};
  const Mesh m = mesh_domain(build_domain(s), 0.05);
  CHECK(m.euler_characteristic() == 0);
  // boundary edges on both circles
  bool inner = false, outer = false;
  for (const auto& e : m.boundary_edges) {
    if (e.circle == 0) outer = true;
    if (e.circle == 1) inner = true;
  }
  CHECK(inner);
  CHECK(outer);
}

TEST_CASE("chord-cut segment and notched disk mesh") {
  DomainSpec s = unit_disk_spec();
  s.gamma.arcs = {{0, PI / 2 - 0.7, PI / 2 + 0.7}};
  s.gamma0.arcs = {{0, 0.15, PI - 0.15}};
  s.chord = ChordCut{0.0, 0.0};
  const Mesh seg = mesh_domain(build_domain(s), 0.08);
  CHECK(seg.euler_characteristic() == 1);
  CHECK(seg.area() == doctest::Approx(PI / 2).epsilon(0.02));
  bool chord_edges = false;
  for (const auto& e : seg.boundary_edges)
    if (e.tag == BTag::chord) {
      chord_edges = true;
      CHECK(std::abs(seg.vertices[e.v0].imag()) < 1e-8);
    }
  CHECK(chord_edges);

  DomainSpec ns = unit_disk_spec();
  ns.gamma.arcs = {{0, PI / 2 - 0.7, PI / 2 + 0.7}};
  ns.gamma0.arcs = {{0, 0.15, PI - 0.15}};
  ns.removed_disk = {{-PI / 2, 0.4}};
  const Mesh nd = mesh_domain(build_domain(ns), 0.08);
  CHECK(nd.euler_characteristic() == 1);
  CHECK(nd.area() < PI - 0.05);
  bool notch_edges = false;
  for (const auto& e : nd.boundary_edges)
    if (e.tag == BTag::notch) notch_edges = true;
  CHECK(notch_edges);
  CHECK(nd.min_angle() > 8.0);
}

TEST_CASE("involution is an exact involution fixing the circle") {
  const Domain d = build_domain(unit_disk_spec());
  const DoubledDomain dd = make_double(d);
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const cplx z{rng.uniform(-0.95, 0.95), rng.uniform(-0.95, 0.95)};
    if (std::abs(z) > 0.05) {
      CHECK(std::abs(dd.involution(dd.involution(z)) - z) < 1e-12);
    }
    const cplx p = std::exp(I * rng.uniform(0.0, 2 * PI));
    CHECK(std::abs(dd.involution(p) - p) < 1e-12);
  }
}

TEST_CASE("reflect_function parities and conjugate extension") {
  const Domain d = build_domain(unit_disk_spec());
  const Mesh m = mesh_domain(d, 0.15);
  const DoubledMesh dm = build_doubled_mesh(m, d.outer);

  // u = 1 - |z|^2 vanishes on the boundary: odd reflection admissible
  std::vector<cplx> u(m.nv());
  for (std::size_t i = 0; i < m.nv(); ++i)
    u[i] = 1.0 - std::norm(m.vertices[i]);
  ParityCheck pc;
  const auto odd = reflect_function(u, true, dm, &pc, 1e-6);
  CHECK(pc.ok);
  for (std::size_t i = 0; i < m.nv(); ++i) {
    CHECK(odd[dm.plus_id[i]] == -odd[dm.minus_id[i]]);
  }

  // u == 1, even parity: identical on both sheets
  std::vector<cplx> one(m.nv(), 1.0);
  const auto even = reflect_function(one, false, dm, &pc, 1e-6);
  for (int g = 0; g < dm.n_global; ++g) CHECK(even[g] == cplx{1.0, 0.0});

  // odd reflection of u == 1 violates the trace precondition
  reflect_function(one, true, dm, &pc, 1e-6);
  CHECK(!pc.ok);
  CHECK(pc.trace_norm == doctest::Approx(1.0));

  // conjugate extension of constant real c
  std::vector<cplx> c(m.nv(), 3.5);
  const auto ext = conjugate_extend(c, dm, 1e-6);
  for (int g = 0; g < dm.n_global; ++g) CHECK(ext[g] == cplx{3.5, 0.0});

  // constant imaginary: precondition failure
  std::vector<cplx> ic(m.nv(), cplx{0.0, 1.0});
  CHECK_THROWS_AS(conjugate_extend(ic, dm, 1e-6), error);
}

TEST_CASE("half-plane model cubic under conjugate extension") {
  // f(w) = w^3/3 + w with real coefficients: F(conj(w)) = conj(F(w))
  auto f = [](cplx w) { return w * w * w / 3.0 + w; };
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    const cplx w{rng.uniform(-2, 2), rng.uniform(0, 2)};
    CHECK(std::abs(f(std::conj(w)) - std::conj(f(w))) < 1e-13);
  }
}
