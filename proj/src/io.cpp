#include "topoquench/io.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tq {

std::string fmt_full(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void ensure_dir(const std::string& path) {
  std::filesystem::create_directories(path);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

ScalarGrid sample_grid(const ScalarFn& f, int dim, const GridSpec& g) {
  ScalarGrid sg;
  sg.dim = dim;
  sg.grid = g;
  const int n = g.n;
  int64_t total = 1;
  for (int a = 0; a < dim; ++a) total *= n;
  sg.v.resize(total);
  for (int64_t id = 0; id < total; ++id) {
    Vec3 k{0, 0, 0};
    int64_t r = id;
    for (int a = dim - 1; a >= 0; --a) {
      k[a] = g.coord(static_cast<int>(r % n));
      r /= n;
    }
    sg.v[id] = f(k);
  }
  return sg;
}

std::string grid_csv(const ScalarGrid& sg) {
  std::ostringstream out;
  static const char* names[] = {"kx", "ky", "kz"};
  for (int a = 0; a < sg.dim; ++a) out << names[a] << ",";
  out << "value\n";
  const int n = sg.grid.n;
  for (size_t id = 0; id < sg.v.size(); ++id) {
    size_t r = id;
    double c[3];
    for (int a = sg.dim - 1; a >= 0; --a) {
      c[a] = sg.grid.coord(static_cast<int>(r % n));
      r /= n;
    }
    for (int a = 0; a < sg.dim; ++a) out << fmt_full(c[a]) << ",";
    out << fmt_full(sg.v[id]) << "\n";
  }
  return out.str();
}

namespace {

std::string svg_head(int w, int h) {
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
      << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << " " << h
      << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  return out.str();
}

std::string fmt2(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string polyline(const std::vector<double>& xs, const std::vector<double>& ys,
                     double xmin, double xmax, double ymin, double ymax,
                     int w, int h, int pad, const std::string& color) {
  std::ostringstream out;
  out << "<polyline fill=\"none\" stroke=\"" << color
      << "\" stroke-width=\"1\" points=\"";
  const double xs_ = (w - 2 * pad) / std::max(xmax - xmin, 1e-300);
  const double ys_ = (h - 2 * pad) / std::max(ymax - ymin, 1e-300);
  for (size_t i = 0; i < xs.size(); ++i)
    out << fmt2(pad + (xs[i] - xmin) * xs_) << ","
        << fmt2(h - pad - (ys[i] - ymin) * ys_) << " ";
  out << "\"/>\n";
  return out.str();
}

}  // namespace

std::string grid_svg(const ScalarGrid& sg) {
  const int n = sg.grid.n;
  if (sg.dim == 1) {
    std::vector<double> xs(n), ys(sg.v.begin(), sg.v.end());
    for (int i = 0; i < n; ++i) xs[i] = sg.grid.coord(i);
    const auto [lo, hi] = std::minmax_element(ys.begin(), ys.end());
    double ymin = *lo, ymax = *hi;
    if (ymax - ymin < 1e-12) { ymin -= 1; ymax += 1; }
    std::ostringstream out;
    out << svg_head(640, 400);
    out << polyline(xs, ys, xs.front(), xs.back(), ymin, ymax, 640, 400, 40,
                    "#1f5fa8");
    out << "</svg>\n";
    return out.str();
  }
  if (sg.dim == 2) {
    const auto [lo, hi] = std::minmax_element(sg.v.begin(), sg.v.end());
    const double vmax = std::max(std::abs(*lo), std::abs(*hi));
    const int cell = std::max(1, 600 / n);
    std::ostringstream out;
    out << svg_head(n * cell, n * cell);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double t = vmax > 0 ? sg.v[static_cast<size_t>(i) * n + j] / vmax : 0;
        // blue (negative) - white - red (positive)
        const int r = static_cast<int>(255 * std::min(1.0, 1 + std::min(t, 0.0)));
        const int b = static_cast<int>(255 * std::min(1.0, 1 - std::max(t, 0.0)));
        const int gg = std::min(r, b);
        out << "<rect x=\"" << i * cell << "\" y=\"" << (n - 1 - j) * cell
            << "\" width=\"" << cell << "\" height=\"" << cell
            << "\" fill=\"rgb(" << r << "," << gg << "," << b << ")\"/>\n";
      }
    }
    out << "</svg>\n";
    return out.str();
  }
  return "";
}

std::string trajectory_csv(const Trajectory& tr) {
  std::ostringstream out;
  out << "t";
  for (int i = 0; i < tr.nspin; ++i) out << ",s" << i;
  out << "\n";
  for (size_t j = 0; j < tr.t.size(); ++j) {
    out << fmt_full(tr.t[j]);
    for (int i = 0; i < tr.nspin; ++i) out << "," << fmt_full(tr.spin[j][i]);
    out << "\n";
  }
  return out.str();
}

std::string trajectory_svg(const Trajectory& tr) {
  static const char* colors[] = {"#1f5fa8", "#c23b22", "#2b8a3e", "#8a4fb5",
                                 "#b8860b"};
  std::ostringstream out;
  out << svg_head(800, 400);
  std::vector<double> xs(tr.t.begin(), tr.t.end());
  for (int i = 0; i < tr.nspin; ++i) {
    std::vector<double> ys(tr.t.size());
    for (size_t j = 0; j < tr.t.size(); ++j) ys[j] = tr.spin[j][i];
    out << polyline(xs, ys, xs.front(), xs.back(), -1.0, 1.0, 800, 400, 30,
                    colors[i % 5]);
  }
  out << "</svg>\n";
  return out.str();
}

namespace {

nlohmann::ordered_json order_json(const OrderResult& o) {
  return {{"order", o.order},
          {"surface", o.surface},
          {"method", o.method},
          {"provenance", o.provenance},
          {"element_values", o.element_values},
          {"value", o.value}};
}

}  // namespace

std::string report_json(const InvariantReport& rep) {
  nlohmann::ordered_json j;
  j["model"] = rep.model;
  j["scheme"] = rep.scheme;
  j["g"] = rep.g;
  if (rep.second_axis >= 0) j["second_axis"] = rep.second_axis;
  j["grid"] = rep.grid;
  j["z2"] = rep.z2;
  j["invariant"] = rep.invariant;
  j["orders"] = nlohmann::ordered_json::array();
  for (const auto& o : rep.orders) j["orders"].push_back(order_json(o));
  return j.dump(2) + "\n";
}

std::string sudden_json(const SuddenControl& sc) {
  nlohmann::ordered_json j;
  j["scheme"] = "sudden_control";
  j["max_quench_component"] = sc.max_quench_component;
  j["max_pair_component"] = sc.max_pair_component;
  j["winding_quantized"] = sc.winding_quantized;
  if (sc.winding_quantized) j["winding"] = sc.winding;
  j["degenerate_points"] = sc.degenerate_points;
  j["pair_value"] = sc.pair_value;
  j["positive_control"] =
      nlohmann::ordered_json::parse(report_json(sc.positive_control));
  return j.dump(2) + "\n";
}

}  // namespace tq
