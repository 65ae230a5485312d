#include "topoquench/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace tq {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
  size_t pos = 0;
  double x;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
  }
  if (pos != v.size())
    throw ConfigError("key '" + key + "': trailing characters in '" + v + "'");
  return x;
}

int to_int(const std::string& key, const std::string& v) {
  const double x = to_double(key, v);
  const int i = static_cast<int>(x);
  if (x != i) throw ConfigError("key '" + key + "': expected an integer");
  return i;
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string line;
  int ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(ln) +
                        ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));

    if (key == "model") c.model = val;
    else if (key == "m_z") c.params.m_z = to_double(key, val);
    else if (key == "t_0") c.params.t_0 = to_double(key, val);
    else if (key == "t_so") c.params.t_so = to_double(key, val);
    else if (key == "t_so_x") c.params.t_so_x = to_double(key, val);
    else if (key == "t_so_y") c.params.t_so_y = to_double(key, val);
    else if (key == "m_x") c.params.m_x = to_double(key, val);
    else if (key == "m_y") c.params.m_y = to_double(key, val);
    else if (key == "m") c.params.m = to_double(key, val);
    else if (key == "axis") c.axis = to_int(key, val);
    else if (key == "g") c.g = to_double(key, val);
    else if (key == "second_axis") c.second_axis = to_int(key, val);
    else if (key == "scheme") c.scheme = val;
    else if (key == "grid") c.grid = to_int(key, val);
    else if (key == "grid_lo") c.grid_lo = to_double(key, val);
    else if (key == "kx") c.k[0] = to_double(key, val);
    else if (key == "ky") c.k[1] = to_double(key, val);
    else if (key == "kz") c.k[2] = to_double(key, val);
    else if (key == "t_max") c.t_max = to_double(key, val);
    else if (key == "workers") c.workers = to_int(key, val);
    else if (key == "formats") {
      c.formats.clear();
      std::istringstream fs(val);
      std::string f;
      while (std::getline(fs, f, ',')) {
        f = trim(f);
        if (f != "csv" && f != "json" && f != "svg")
          throw ConfigError("key 'formats': unknown format '" + f +
                            "' (use csv, json, svg)");
        c.formats.push_back(f);
      }
    } else {
      throw ConfigError(
          "unknown config key '" + key +
          "' (known: model, m_z, t_0, t_so, t_so_x, t_so_y, m_x, m_y, m, "
          "axis, g, second_axis, scheme, grid, grid_lo, kx, ky, kz, t_max, "
          "workers, formats)");
    }
  }

  if (c.scheme != "scheme1" && c.scheme != "scheme2" &&
      c.scheme != "sudden_control")
    throw ConfigError("key 'scheme': unknown scheme '" + c.scheme + "'");
  if (c.grid < 3) throw ConfigError("key 'grid': need at least 3 nodes");
  if (c.g < 0) throw ConfigError("key 'g': sweep rate must be >= 0");
  if (c.workers < 0) throw ConfigError("key 'workers': must be >= 0");
  make_model(c);  // validates the model name
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string dump_config(const RunConfig& c) {
  std::ostringstream out;
  out << "model = " << c.model << "\n";
  out << "m_z = " << fmt17(c.params.m_z) << "\n";
  out << "t_0 = " << fmt17(c.params.t_0) << "\n";
  out << "t_so = " << fmt17(c.params.t_so) << "\n";
  out << "t_so_x = " << fmt17(c.params.t_so_x) << "\n";
  out << "t_so_y = " << fmt17(c.params.t_so_y) << "\n";
  out << "m_x = " << fmt17(c.params.m_x) << "\n";
  out << "m_y = " << fmt17(c.params.m_y) << "\n";
  out << "m = " << fmt17(c.params.m) << "\n";
  out << "axis = " << c.axis << "\n";
  out << "g = " << fmt17(c.g) << "\n";
  out << "second_axis = " << c.second_axis << "\n";
  out << "scheme = " << c.scheme << "\n";
  out << "grid = " << c.grid << "\n";
  out << "grid_lo = " << fmt17(c.grid_lo) << "\n";
  out << "kx = " << fmt17(c.k[0]) << "\n";
  out << "ky = " << fmt17(c.k[1]) << "\n";
  out << "kz = " << fmt17(c.k[2]) << "\n";
  out << "t_max = " << fmt17(c.t_max) << "\n";
  out << "workers = " << c.workers << "\n";
  out << "formats = ";
  for (size_t i = 0; i < c.formats.size(); ++i)
    out << (i ? "," : "") << c.formats[i];
  out << "\n";
  return out.str();
}

Model make_model(const RunConfig& c) {
  return Model::from_name(c.model, c.params);
}

GridSpec make_grid(const RunConfig& c) {
  GridSpec g;
  g.n = c.grid;
  g.lo = c.grid_lo;
  return g;
}

}  // namespace tq
