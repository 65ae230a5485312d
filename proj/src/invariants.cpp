#include "topoquench/invariants.hpp"

#include <algorithm>
#include <cmath>

namespace tq {

namespace {

int vsgn(double v) {
  if (std::abs(v) <= kSignEta)
    throw DegenerateSign("dynamical field component below the sign threshold");
  return v > 0 ? 1 : -1;
}

// One pass of the hierarchy: a defining scalar for the geometry plus the
// dynamical-field components evaluated on it.
struct DynSource {
  std::string surface;     // "bis" or "sis"
  std::string provenance;  // "value", "gradient", "second-value"
  ScalarFn defining;
  std::function<ScalarFn(int)> comp;
};

void extract_dim1(const DynSource& src, const GridSpec& grid,
                  InvariantReport& rep) {
  auto zeros = detect_zeros_1d(src.defining, grid);
  if (zeros.size() % 2) throw NonQuantized("odd number of 1D crossings");
  ScalarFn v1 = src.comp(1);
  const double h = grid.spacing() / 8;
  int sum = 0;
  std::vector<int> evid;
  for (double kx : zeros) {
    const double dfdk =
        src.defining({kx + h, 0, 0}) - src.defining({kx - h, 0, 0});
    const int term = (dfdk > 0 ? 1 : -1) * vsgn(v1({kx, 0, 0}));
    evid.push_back(term);
    sum += term;
  }
  rep.orders.push_back(
      {1, src.surface, "pair", src.provenance, evid, std::abs(sum) / 2});
}

// Oriented crossing sum over a set of loops: 1/2 sum sgn(dV_r/ds) sgn(V_last).
int crossing_pair_sum(const std::vector<Loop>& loops, const ScalarFn& vr,
                      const ScalarFn& vlast, const GridSpec& grid,
                      std::vector<int>& evid) {
  int sum = 0, npts = 0;
  for (const auto& lp : loops) {
    std::vector<LoopCrossing> cr;
    try {
      cr = loop_zeros(lp, vr, grid);
    } catch (const EmptySurface&) {
      continue;
    }
    for (const auto& c : cr) {
      const int term = c.ds_sign * vsgn(vlast(c.k));
      evid.push_back(term);
      sum += term;
      ++npts;
    }
  }
  if (npts == 0) throw EmptySurface("reduction produced no points");
  if (npts % 2) throw NonQuantized("odd crossing count along the loops");
  return sum / 2;
}

void extract_dim2(const DynSource& src, const GridSpec& grid,
                  InvariantReport& rep) {
  auto loops = contour_2d(src.defining, grid);
  ScalarFn c1 = src.comp(1), c2 = src.comp(2);
  Field2 f2 = [c1, c2](const Vec3& k) {
    return std::array<double, 2>{c1(k), c2(k)};
  };
  std::vector<int> w;
  int tot = 0;
  for (const auto& lp : loops) {
    const int wi = ring_winding(lp, f2);
    w.push_back(wi);
    tot += wi;
  }
  rep.orders.push_back({1, src.surface, "winding", src.provenance, w, -tot});

  std::vector<int> evid;
  const int pair = crossing_pair_sum(loops, c1, c2, grid, evid);
  rep.orders.push_back({2, src.surface, "pair", src.provenance, evid, pair});
}

void extract_dim3(const DynSource& src, const GridSpec& grid,
                  InvariantReport& rep) {
  TriMesh mesh = isosurface_3d(src.defining, grid);
  ScalarFn c1 = src.comp(1), c2 = src.comp(2), c3 = src.comp(3);
  Field3 f3 = [c1, c2, c3](const Vec3& k) {
    return Vec3{c1(k), c2(k), c3(k)};
  };
  const int deg = surface_degree(mesh, f3);
  rep.orders.push_back(
      {1, src.surface, "degree", src.provenance, {deg}, -deg});

  auto rings = mesh_section(mesh, src.defining, c1, grid);
  Field2 f2 = [c2, c3](const Vec3& k) {
    return std::array<double, 2>{c2(k), c3(k)};
  };
  std::vector<int> w;
  int tot = 0;
  for (const auto& rg : rings) {
    const int wi = ring_winding(rg, f2);
    w.push_back(wi);
    tot += wi;
  }
  rep.orders.push_back({2, src.surface, "winding", src.provenance, w, -tot});

  std::vector<int> evid;
  const int pair = crossing_pair_sum(rings, c2, c3, grid, evid);
  rep.orders.push_back({3, src.surface, "pair", src.provenance, evid, pair});
}

// Z2 hierarchy: surface -> rings on {comp 2 = 0} -> points on {comp 3 = 0},
// then opposite signs of components 1 and 4 across time-reversed point pairs.
void extract_z2(const DynSource& src, const GridSpec& grid,
                InvariantReport& rep) {
  TriMesh mesh = isosurface_3d(src.defining, grid);
  auto rings = mesh_section(mesh, src.defining, src.comp(2), grid);
  ScalarFn c3 = src.comp(3), t1 = src.comp(1), t4 = src.comp(4);

  struct Pt {
    Vec3 k;
    int s1, s4;
  };
  std::vector<Pt> pts;
  for (const auto& rg : rings) {
    std::vector<LoopCrossing> cr;
    try {
      cr = loop_zeros(rg, c3, grid);
    } catch (const EmptySurface&) {
      continue;
    }
    for (const auto& c : cr) pts.push_back({c.k, vsgn(t1(c.k)), vsgn(t4(c.k))});
  }
  if (pts.empty()) throw EmptySurface("no highest-order points");
  if (pts.size() % 2) throw NonQuantized("odd highest-order point count");

  std::vector<char> used(pts.size(), 0);
  std::vector<int> pair_vals;
  int prod = 1;
  for (size_t i = 0; i < pts.size(); ++i) {
    if (used[i]) continue;
    used[i] = 1;
    int best = -1;
    double bd = 1e30;
    for (size_t j = i + 1; j < pts.size(); ++j) {
      if (used[j]) continue;
      double d2 = 0;
      for (int a = 0; a < 3; ++a) {
        const double dd = wrap_delta(pts[i].k[a] + pts[j].k[a], grid.period);
        d2 += dd * dd;
      }
      if (d2 < bd) {
        bd = d2;
        best = static_cast<int>(j);
      }
    }
    if (best < 0 || std::sqrt(bd) > 0.1)
      throw InconsistentEvidence("highest-order point lacks a k -> -k partner");
    used[best] = 1;
    const int p1 = pts[i].s1 * pts[best].s1;
    const int p4 = pts[i].s4 * pts[best].s4;
    if (p1 != p4)
      throw InconsistentEvidence("tested components disagree across the pair");
    pair_vals.push_back(p1);
    prod *= p1;
  }
  rep.orders.push_back({4, src.surface, "z2", src.provenance, pair_vals, prod});
}

void extract(const Model& model, const DynSource& src, const GridSpec& grid,
             InvariantReport& rep) {
  if (model.z2())
    extract_z2(src, grid, rep);
  else if (model.dim() == 1)
    extract_dim1(src, grid, rep);
  else if (model.dim() == 2)
    extract_dim2(src, grid, rep);
  else
    extract_dim3(src, grid, rep);
}

void finalize(InvariantReport& rep) {
  if (rep.orders.empty()) throw EmptySurface("nothing extracted");
  rep.invariant = rep.orders.front().value;
  for (const auto& o : rep.orders)
    if (o.value != rep.invariant)
      throw InconsistentEvidence("orders disagree: " + o.surface + " order " +
                                 std::to_string(o.order));
}

}  // namespace

int winding_1d_pair(double v_minus, double v_plus, bool signed_version) {
  const int d = vsgn(v_minus) - vsgn(v_plus);
  return signed_version ? d / 2 : std::abs(d) / 2;
}

int ring_winding(const Loop& loop, const Field2& field) {
  const int n = static_cast<int>(loop.k.size());
  if (n < 3) throw NonQuantized("loop has fewer than 3 vertices");
  double tot = 0;
  std::array<double, 2> prev = field(loop.k[0]);
  if (std::hypot(prev[0], prev[1]) <= kSignEta)
    throw DegenerateSign("dynamical field vanishes on the loop");
  for (int j = 1; j <= n; ++j) {
    std::array<double, 2> cur = field(loop.k[j % n]);
    if (std::hypot(cur[0], cur[1]) <= kSignEta)
      throw DegenerateSign("dynamical field vanishes on the loop");
    tot += std::atan2(prev[0] * cur[1] - prev[1] * cur[0],
                      prev[0] * cur[0] + prev[1] * cur[1]);
    prev = cur;
  }
  const double w = tot / (2 * M_PI);
  const double r = std::round(w);
  if (std::abs(w - r) >= 0.1)
    throw NonQuantized("loop winding residual " + std::to_string(w - r));
  return static_cast<int>(r);
}

int surface_degree(const TriMesh& mesh, const Field3& field) {
  std::vector<Vec3> u(mesh.v.size());
  for (size_t i = 0; i < mesh.v.size(); ++i) {
    Vec3 f = field(mesh.v[i]);
    const double nn = std::sqrt(f[0] * f[0] + f[1] * f[1] + f[2] * f[2]);
    if (nn <= kSignEta)
      throw DegenerateSign("dynamical field vanishes on the mesh");
    u[i] = {f[0] / nn, f[1] / nn, f[2] / nn};
  }
  double omega = 0;
  for (const auto& t : mesh.tri) {
    const Vec3 &a = u[t[0]], &b = u[t[1]], &c = u[t[2]];
    const double triple = a[0] * (b[1] * c[2] - b[2] * c[1]) -
                          a[1] * (b[0] * c[2] - b[2] * c[0]) +
                          a[2] * (b[0] * c[1] - b[1] * c[0]);
    const double den = 1 + (a[0] * b[0] + a[1] * b[1] + a[2] * b[2]) +
                       (b[0] * c[0] + b[1] * c[1] + b[2] * c[2]) +
                       (c[0] * a[0] + c[1] * a[1] + c[2] * a[2]);
    omega += 2 * std::atan2(triple, den);
  }
  const double d = omega / (4 * M_PI);
  const double r = std::round(d);
  if (std::abs(d - r) >= 0.1)
    throw NonQuantized("surface degree residual " + std::to_string(d - r));
  return static_cast<int>(r);
}

InvariantReport scheme1(const Model& model, double g, const GridSpec& grid) {
  if (!(g > 0)) throw ConfigError("scheme1 needs g > 0");
  QuenchField qf(model, QuenchSpec{0, g});
  InvariantReport rep;
  rep.model = model.name();
  rep.scheme = "scheme1";
  rep.g = g;
  rep.grid = grid.n;
  rep.z2 = model.z2();

  const double step = grid.spacing();
  DynSource bis{"bis", "value", qf.bis_scalar(),
                [qf](int i) { return qf.value_fn(i); }};
  DynSource sis{"sis", "gradient", qf.sis_scalar(),
                [qf, step](int i) { return qf.gradient_fn(i, step); }};
  extract(model, bis, grid, rep);
  extract(model, sis, grid, rep);
  finalize(rep);
  return rep;
}

InvariantReport scheme2(const Model& model, double g, int second_axis,
                        const GridSpec& grid) {
  if (!(g > 0)) throw ConfigError("scheme2 needs g > 0");
  if (second_axis <= 0 || second_axis >= model.ncomp())
    throw ConfigError("second quench axis must be a spin-orbit component");
  QuenchField first(model, QuenchSpec{0, g});
  QuenchField second(model, QuenchSpec{second_axis, g});
  InvariantReport rep;
  rep.model = model.name();
  rep.scheme = "scheme2";
  rep.g = g;
  rep.second_axis = second_axis;
  rep.grid = grid.n;
  rep.z2 = model.z2();

  DynSource src{"sis", "second-value", first.sis_scalar(),
                [second](int i) { return second.value_fn(i); }};
  extract(model, src, grid, rep);
  finalize(rep);
  return rep;
}

SuddenControl sudden_control(const Model& model, const GridSpec& grid) {
  if (model.dim() != 2 || model.ncomp() != 3)
    throw ConfigError("sudden control is defined for the 2D rank-2 model");
  QuenchField first(model, QuenchSpec{0, 0.0});
  QuenchField second(model, QuenchSpec{2, 0.0});
  auto loops = contour_2d(first.bis_scalar(), grid);

  SuddenControl sc;
  ScalarFn v1 = second.value_fn(1), v2 = second.value_fn(2);
  sc.max_quench_component = -1e30;
  for (const auto& lp : loops)
    for (const auto& k : lp.k)
      sc.max_quench_component =
          std::max(sc.max_quench_component, second.tasp(k)[2]);

  int sum = 0, npts = 0;
  for (const auto& lp : loops) {
    std::vector<LoopCrossing> cr;
    try {
      cr = loop_zeros(lp, v1, grid);
    } catch (const EmptySurface&) {
      continue;
    }
    for (const auto& c : cr) {
      sc.max_pair_component =
          std::max(sc.max_pair_component, std::abs(second.tasp(c.k)[1]));
      try {
        sum += c.ds_sign * vsgn(v2(c.k));
        ++npts;
      } catch (const DegenerateSign&) {
        // the partner component also vanishes here; no sign to harvest
        ++sc.degenerate_points;
      }
    }
  }
  sc.pair_value = npts ? sum / 2 : 0;

  try {
    int tot = 0;
    Field2 f2 = [v1, v2](const Vec3& k) {
      return std::array<double, 2>{v1(k), v2(k)};
    };
    for (const auto& lp : loops) tot += ring_winding(lp, f2);
    sc.winding_quantized = true;
    sc.winding = -tot;
  } catch (const DegenerateSign&) {
    sc.winding_quantized = false;
  } catch (const NonQuantized&) {
    sc.winding_quantized = false;
  }

  sc.positive_control = scheme2(model, 1.0, 2, grid);
  return sc;
}

}  // namespace tq
