#include "topoquench/surfaces.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <thread>

namespace tq {

namespace {

int g_max_workers = 0;

constexpr double kNodeZeroTol = 1e-10;

// Clamped sign: values within the node tolerance count as positive, so the
// contour passes infinitesimally on one fixed side of symmetry-pinned zeros.
int csign(double v) { return v < -kNodeZeroTol ? -1 : 1; }

void parallel_fill(int total, const std::function<void(int, int)>& chunk) {
  int nw = g_max_workers > 0
               ? g_max_workers
               : static_cast<int>(std::thread::hardware_concurrency());
  nw = std::clamp(nw, 1, 16);
  if (total < 1024 || nw == 1) {
    chunk(0, total);
    return;
  }
  std::vector<std::thread> pool;
  const int step = (total + nw - 1) / nw;
  for (int w = 0; w < nw; ++w) {
    const int a = w * step, b = std::min(total, a + step);
    if (a >= b) break;
    pool.emplace_back(chunk, a, b);
  }
  for (auto& t : pool) t.join();
}

Vec3 wrap_point(Vec3 k, const GridSpec& g) {
  for (double& x : k) x = wrap_into(x, g.lo, g.period);
  return k;
}

Vec3 lerp3(const Vec3& a, const Vec3& b, double t) {
  return {a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]),
          a[2] + t * (b[2] - a[2])};
}

// Chain segments (pairs of point indices) into closed loops.
std::vector<std::vector<int>> chain_loops(
    const std::vector<std::array<int, 2>>& segs, int npoints) {
  std::vector<std::vector<int>> incident(npoints);
  for (int s = 0; s < static_cast<int>(segs.size()); ++s) {
    incident[segs[s][0]].push_back(s);
    incident[segs[s][1]].push_back(s);
  }
  for (const auto& inc : incident)
    if (inc.size() != 0 && inc.size() != 2)
      throw DegenerateSign("surface tangent to the reduction zero set");
  std::vector<char> used(segs.size(), 0);
  std::vector<std::vector<int>> loops;
  for (int s0 = 0; s0 < static_cast<int>(segs.size()); ++s0) {
    if (used[s0]) continue;
    std::vector<int> loop;
    int seg = s0, vert = segs[s0][0];
    while (!used[seg]) {
      used[seg] = 1;
      loop.push_back(vert);
      vert = segs[seg][0] == vert ? segs[seg][1] : segs[seg][0];
      const auto& inc = incident[vert];
      seg = inc[0] == seg ? inc[1] : inc[0];
    }
    loops.push_back(std::move(loop));
  }
  return loops;
}

double dot3(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

Vec3 cross3(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

Vec3 wrap_tangent(const Vec3& a, const Vec3& b, double period) {
  return {wrap_delta(b[0] - a[0], period), wrap_delta(b[1] - a[1], period),
          wrap_delta(b[2] - a[2], period)};
}

}  // namespace

void set_max_workers(int n) { g_max_workers = n; }

Vec3 refine_crossing(const ScalarFn& f, const Vec3& a, const Vec3& b) {
  Vec3 lo = a, hi = b;
  const int slo = csign(f(lo));
  for (int it = 0; it < 60; ++it) {
    Vec3 mid = lerp3(lo, hi, 0.5);
    // raw sign here: the clamp only resolves which side node-exact zeros
    // belong to, the refined point should sit on the true zero
    if ((f(mid) < 0 ? -1 : 1) == slo)
      lo = mid;
    else
      hi = mid;
  }
  return lerp3(lo, hi, 0.5);
}

Vec3 num_grad(const ScalarFn& f, const Vec3& k, double step) {
  Vec3 g{};
  for (int a = 0; a < 3; ++a) {
    Vec3 kp = k, km = k;
    kp[a] += step;
    km[a] -= step;
    g[a] = (f(kp) - f(km)) / (2 * step);
  }
  return g;
}

Vec3 kperp_dir(const ScalarFn& f, const Vec3& k, double step) {
  Vec3 g = num_grad(f, k, step);
  const double n = std::sqrt(dot3(g, g));
  if (n < 1e-8) throw FlatField("defining scalar has vanishing gradient");
  return {g[0] / n, g[1] / n, g[2] / n};
}

std::vector<double> detect_zeros_1d(const ScalarFn& f, const GridSpec& g) {
  const int nc = g.cells();
  std::vector<double> v(nc);
  for (int i = 0; i < nc; ++i) v[i] = f({g.coord(i), 0, 0});
  std::vector<double> zeros;
  for (int i = 0; i < nc; ++i) {
    if (csign(v[i]) == csign(v[(i + 1) % nc])) continue;
    Vec3 z = refine_crossing(f, {g.coord(i), 0, 0}, {g.coord(i + 1), 0, 0});
    zeros.push_back(wrap_into(z[0], g.lo, g.period));
  }
  if (zeros.empty()) throw EmptySurface("no zero crossing on the 1D zone");
  std::sort(zeros.begin(), zeros.end());
  return zeros;
}

std::vector<Loop> contour_2d(const ScalarFn& f, const GridSpec& g) {
  const int nc = g.cells();
  std::vector<double> val(nc * nc);
  parallel_fill(nc * nc, [&](int a, int b) {
    for (int id = a; id < b; ++id)
      val[id] = f({g.coord(id / nc), g.coord(id % nc), 0});
  });
  auto node = [&](int i, int j) { return (i % nc) * nc + (j % nc); };

  std::map<int64_t, int> edge_vertex;
  std::vector<Vec3> pts;
  std::vector<std::array<int, 2>> segs;
  auto crossing = [&](int na, int nb, const Vec3& pa, const Vec3& pb) {
    const int64_t key =
        static_cast<int64_t>(std::min(na, nb)) * nc * nc + std::max(na, nb);
    auto it = edge_vertex.find(key);
    if (it != edge_vertex.end()) return it->second;
    Vec3 p = na < nb ? refine_crossing(f, pa, pb) : refine_crossing(f, pb, pa);
    pts.push_back(wrap_point(p, g));
    edge_vertex.emplace(key, static_cast<int>(pts.size()) - 1);
    return static_cast<int>(pts.size()) - 1;
  };

  const double d = g.spacing();
  for (int i = 0; i < nc; ++i) {
    for (int j = 0; j < nc; ++j) {
      const double x = g.coord(i), y = g.coord(j);
      const int n00 = node(i, j), n10 = node(i + 1, j), n01 = node(i, j + 1),
                n11 = node(i + 1, j + 1);
      const Vec3 p00{x, y, 0}, p10{x + d, y, 0}, p01{x, y + d, 0},
          p11{x + d, y + d, 0};
      const int tri[2][3] = {{n00, n10, n11}, {n00, n11, n01}};
      const Vec3 pos[2][3] = {{p00, p10, p11}, {p00, p11, p01}};
      for (int t = 0; t < 2; ++t) {
        const int s0 = csign(val[tri[t][0]]), s1 = csign(val[tri[t][1]]),
                  s2 = csign(val[tri[t][2]]);
        if (s0 == s1 && s1 == s2) continue;
        std::vector<int> cut;
        for (int e = 0; e < 3; ++e) {
          const int a = e, b = (e + 1) % 3;
          if (csign(val[tri[t][a]]) != csign(val[tri[t][b]]))
            cut.push_back(crossing(tri[t][a], tri[t][b], pos[t][a], pos[t][b]));
        }
        segs.push_back({cut[0], cut[1]});
      }
    }
  }
  if (segs.empty()) throw EmptySurface("no zero contour on the 2D zone");

  std::vector<Loop> out;
  const double gstep = d / 8;
  for (const auto& idx : chain_loops(segs, static_cast<int>(pts.size()))) {
    Loop loop;
    for (int p : idx) loop.k.push_back(pts[p]);
    // orientation vote: tangent should match the CCW rotation of grad f
    double vote = 0;
    const int m = static_cast<int>(loop.k.size());
    for (int j = 0; j < m; ++j) {
      Vec3 t = wrap_tangent(loop.k[j], loop.k[(j + 1) % m], g.period);
      Vec3 gr = num_grad(f, loop.k[j], gstep);
      vote += t[0] * (-gr[1]) + t[1] * gr[0];
    }
    if (vote < 0) std::reverse(loop.k.begin(), loop.k.end());
    out.push_back(std::move(loop));
  }
  return out;
}

TriMesh isosurface_3d(const ScalarFn& f, const GridSpec& g) {
  const int nc = g.cells();
  const int64_t nn = static_cast<int64_t>(nc) * nc * nc;
  std::vector<double> val(nn);
  parallel_fill(static_cast<int>(nn), [&](int a, int b) {
    for (int id = a; id < b; ++id) {
      const int i = id / (nc * nc), j = (id / nc) % nc, l = id % nc;
      val[id] = f({g.coord(i), g.coord(j), g.coord(l)});
    }
  });
  auto node = [&](int i, int j, int l) {
    return (static_cast<int64_t>(i % nc) * nc + (j % nc)) * nc + (l % nc);
  };

  TriMesh mesh;
  std::map<int64_t, int> edge_vertex;
  auto crossing = [&](int64_t na, int64_t nb, const Vec3& pa, const Vec3& pb) {
    const int64_t key = std::min(na, nb) * nn + std::max(na, nb);
    auto it = edge_vertex.find(key);
    if (it != edge_vertex.end()) return it->second;
    Vec3 p = na < nb ? refine_crossing(f, pa, pb) : refine_crossing(f, pb, pa);
    mesh.v.push_back(wrap_point(p, g));
    edge_vertex.emplace(key, static_cast<int>(mesh.v.size()) - 1);
    return static_cast<int>(mesh.v.size()) - 1;
  };

  const double d = g.spacing(), gstep = d / 8;
  // per-triangle alignment of the face normal with grad f; slivers give noisy
  // votes, the propagation pass below settles them from their neighbors
  std::vector<double> vote;
  auto emit = [&](int a, int b, int c) {
    const Vec3& pa = mesh.v[a];
    Vec3 e1 = wrap_tangent(pa, mesh.v[b], g.period);
    Vec3 e2 = wrap_tangent(pa, mesh.v[c], g.period);
    Vec3 nrm = cross3(e1, e2);
    Vec3 cen{pa[0] + (e1[0] + e2[0]) / 3, pa[1] + (e1[1] + e2[1]) / 3,
             pa[2] + (e1[2] + e2[2]) / 3};
    mesh.tri.push_back({a, b, c});
    vote.push_back(dot3(nrm, num_grad(f, cen, gstep)));
  };

  // 6 tetrahedra per cell around the main diagonal (corner bit order x,y,z)
  static constexpr int tets[6][4] = {{0, 1, 3, 7}, {0, 3, 2, 7}, {0, 2, 6, 7},
                                     {0, 6, 4, 7}, {0, 4, 5, 7}, {0, 5, 1, 7}};
  for (int i = 0; i < nc; ++i) {
    for (int j = 0; j < nc; ++j) {
      for (int l = 0; l < nc; ++l) {
        int64_t cn[8];
        Vec3 cp[8];
        int cs[8];
        bool mixed = false;
        for (int m = 0; m < 8; ++m) {
          const int bx = m & 1, by = (m >> 1) & 1, bz = (m >> 2) & 1;
          cn[m] = node(i + bx, j + by, l + bz);
          cp[m] = {g.coord(i) + bx * d, g.coord(j) + by * d, g.coord(l) + bz * d};
          cs[m] = csign(val[cn[m]]);
          if (cs[m] != cs[0]) mixed = true;
        }
        if (!mixed) continue;
        for (const auto& tet : tets) {
          int neg = 0;
          for (int m : tet) neg += cs[m] < 0;
          if (neg == 0 || neg == 4) continue;
          std::vector<int> lone, rest;
          const int lone_sign = neg == 1 ? -1 : neg == 3 ? 1 : 0;
          if (lone_sign != 0) {
            for (int m : tet) (cs[m] == lone_sign ? lone : rest).push_back(m);
            const int v0 = crossing(cn[lone[0]], cn[rest[0]], cp[lone[0]], cp[rest[0]]);
            const int v1 = crossing(cn[lone[0]], cn[rest[1]], cp[lone[0]], cp[rest[1]]);
            const int v2 = crossing(cn[lone[0]], cn[rest[2]], cp[lone[0]], cp[rest[2]]);
            emit(v0, v1, v2);
          } else {
            std::vector<int> mm, pp;
            for (int m : tet) (cs[m] < 0 ? mm : pp).push_back(m);
            const int q0 = crossing(cn[mm[0]], cn[pp[0]], cp[mm[0]], cp[pp[0]]);
            const int q1 = crossing(cn[mm[0]], cn[pp[1]], cp[mm[0]], cp[pp[1]]);
            const int q2 = crossing(cn[mm[1]], cn[pp[1]], cp[mm[1]], cp[pp[1]]);
            const int q3 = crossing(cn[mm[1]], cn[pp[0]], cp[mm[1]], cp[pp[0]]);
            emit(q0, q1, q2);
            emit(q0, q2, q3);
          }
        }
      }
    }
  }
  if (mesh.tri.empty()) throw EmptySurface("no zero surface in the 3D zone");

  // propagate a consistent winding across shared edges, then pick each
  // component's global sense by its summed gradient vote
  const int nt = static_cast<int>(mesh.tri.size());
  std::map<std::pair<int, int>, std::vector<int>> by_edge;
  for (int t = 0; t < nt; ++t)
    for (int e = 0; e < 3; ++e) {
      int a = mesh.tri[t][e], b = mesh.tri[t][(e + 1) % 3];
      by_edge[{std::min(a, b), std::max(a, b)}].push_back(t);
    }
  auto has_directed = [&](int t, int a, int b) {
    for (int e = 0; e < 3; ++e)
      if (mesh.tri[t][e] == a && mesh.tri[t][(e + 1) % 3] == b) return true;
    return false;
  };
  std::vector<char> seen(nt, 0), flip(nt, 0);
  for (int seed = 0; seed < nt; ++seed) {
    if (seen[seed]) continue;
    std::vector<int> comp, stack{seed};
    seen[seed] = 1;
    while (!stack.empty()) {
      const int t = stack.back();
      stack.pop_back();
      comp.push_back(t);
      for (int e = 0; e < 3; ++e) {
        int a = mesh.tri[t][e], b = mesh.tri[t][(e + 1) % 3];
        if (flip[t]) std::swap(a, b);
        for (int u : by_edge[{std::min(a, b), std::max(a, b)}]) {
          if (u == t || seen[u]) continue;
          // neighbor must traverse the shared edge in the opposite direction
          flip[u] = !has_directed(u, b, a);
          seen[u] = 1;
          stack.push_back(u);
        }
      }
    }
    double tot = 0;
    for (int t : comp) tot += flip[t] ? -vote[t] : vote[t];
    if (tot < 0)
      for (int t : comp) flip[t] = !flip[t];
  }
  for (int t = 0; t < nt; ++t)
    if (flip[t]) std::swap(mesh.tri[t][1], mesh.tri[t][2]);
  return mesh;
}

std::vector<Loop> mesh_section(const TriMesh& m, const ScalarFn& f,
                               const ScalarFn& r, const GridSpec& g) {
  std::vector<double> rv(m.v.size());
  for (size_t i = 0; i < m.v.size(); ++i) rv[i] = r(m.v[i]);

  std::map<int64_t, int> edge_pt;
  std::vector<Vec3> pts;
  std::vector<std::array<int, 2>> segs;
  auto crossing = [&](int a, int b) {
    const int64_t key = static_cast<int64_t>(std::min(a, b)) * m.v.size() +
                        std::max(a, b);
    auto it = edge_pt.find(key);
    if (it != edge_pt.end()) return it->second;
    const int lo = std::min(a, b), hi = std::max(a, b);
    Vec3 pa = m.v[lo];
    Vec3 t = wrap_tangent(pa, m.v[hi], g.period);
    Vec3 pb{pa[0] + t[0], pa[1] + t[1], pa[2] + t[2]};
    pts.push_back(wrap_point(refine_crossing(r, pa, pb), g));
    edge_pt.emplace(key, static_cast<int>(pts.size()) - 1);
    return static_cast<int>(pts.size()) - 1;
  };

  for (const auto& tri : m.tri) {
    const int s0 = csign(rv[tri[0]]), s1 = csign(rv[tri[1]]),
              s2 = csign(rv[tri[2]]);
    if (s0 == s1 && s1 == s2) continue;
    std::vector<int> cut;
    for (int e = 0; e < 3; ++e) {
      const int a = tri[e], b = tri[(e + 1) % 3];
      if (csign(rv[a]) != csign(rv[b])) cut.push_back(crossing(a, b));
    }
    segs.push_back({cut[0], cut[1]});
  }
  if (segs.empty()) throw EmptySurface("section scalar does not cross the mesh");

  std::vector<Loop> out;
  const double gstep = g.spacing() / 8;
  for (const auto& idx : chain_loops(segs, static_cast<int>(pts.size()))) {
    Loop loop;
    for (int p : idx) loop.k.push_back(pts[p]);
    double vote = 0;
    const int n = static_cast<int>(loop.k.size());
    for (int j = 0; j < n; ++j) {
      Vec3 t = wrap_tangent(loop.k[j], loop.k[(j + 1) % n], g.period);
      Vec3 dir = cross3(num_grad(r, loop.k[j], gstep), num_grad(f, loop.k[j], gstep));
      vote += dot3(t, dir);
    }
    if (vote < 0) std::reverse(loop.k.begin(), loop.k.end());
    out.push_back(std::move(loop));
  }
  return out;
}

std::vector<LoopCrossing> loop_zeros(const Loop& loop, const ScalarFn& r,
                                     const GridSpec& g) {
  const int n = static_cast<int>(loop.k.size());
  std::vector<double> rv(n);
  for (int j = 0; j < n; ++j) rv[j] = r(loop.k[j]);
  std::vector<LoopCrossing> out;
  for (int j = 0; j < n; ++j) {
    const int jn = (j + 1) % n;
    if (csign(rv[j]) == csign(rv[jn])) continue;
    Vec3 a = loop.k[j];
    Vec3 t = wrap_tangent(a, loop.k[jn], g.period);
    Vec3 b{a[0] + t[0], a[1] + t[1], a[2] + t[2]};
    LoopCrossing c;
    c.k = wrap_point(refine_crossing(r, a, b), g);
    c.ds_sign = csign(rv[jn]);
    out.push_back(c);
  }
  if (out.empty()) throw EmptySurface("no zero crossing along the loop");
  return out;
}

double QuenchField::rho(const Vec3& k) const {
  Coeffs h = field(k);
  const double e = h.eps();
  if (e < 1e-12) throw GaplessPoint("gap closes on the sampling grid");
  return h[spec_.axis] / e;
}

double QuenchField::imbalance(const Vec3& k) const {
  Coeffs h = field(k);
  return band_imbalance(spec_.g, h[spec_.axis], h.eps());
}

Coeffs QuenchField::tasp(const Vec3& k) const { return tq::tasp(field(k), spec_); }

ScalarFn QuenchField::bis_scalar() const {
  return [*this](const Vec3& k) { return field(k)[spec_.axis]; };
}

ScalarFn QuenchField::sis_scalar() const {
  if (spec_.sudden())
    throw EmptySurface("sudden quench: the SIS coincides with the BIS");
  const double level = sis_level(spec_.g);
  return [*this, level](const Vec3& k) { return rho(k) - level; };
}

ScalarFn QuenchField::value_fn(int i) const {
  return [*this, i](const Vec3& k) { return -tasp(k)[i]; };
}

ScalarFn QuenchField::gradient_fn(int i, double step) const {
  return [*this, i, step](const Vec3& k) {
    auto rho_fn = [this](const Vec3& q) { return rho(q); };
    Vec3 u = kperp_dir(rho_fn, k, step / 8);
    Vec3 kp{k[0] + step * u[0], k[1] + step * u[1], k[2] + step * u[2]};
    Vec3 km{k[0] - step * u[0], k[1] - step * u[1], k[2] - step * u[2]};
    return -(tasp(kp)[i] - tasp(km)[i]) / (2 * step);
  };
}

}  // namespace tq
