#include "focklab/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "focklab/expression.hpp"

namespace focklab {

ConfigError::ConfigError(const std::string& source, std::size_t line, const std::string& field,
                         const std::string& message)
    : std::runtime_error(source + (line ? ":" + std::to_string(line) : std::string()) +
                         (field.empty() ? std::string() : ": field '" + field + "'") + ": " + message),
      line_(line),
      field_(field) {}

void ExperimentConfig::fail(const std::string& field, const std::string& message) const {
  auto it = lines.find(field);
  throw ConfigError(source, it == lines.end() ? 0 : it->second, field, message);
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

// Splits on sep at bracket depth 0.
std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (depth < 0) throw std::invalid_argument("unbalanced brackets in '" + s + "'");
    if (c == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (depth != 0) throw std::invalid_argument("unbalanced brackets in '" + s + "'");
  out.push_back(trim(cur));
  return out;
}

struct Call {
  std::string name;
  std::vector<std::string> args;
  bool has_parens = false;
};

Call parse_call(const std::string& text) {
  const std::string t = trim(text);
  Call c;
  const auto open = t.find('(');
  if (open == std::string::npos) {
    c.name = t;
    return c;
  }
  if (t.back() != ')') throw std::invalid_argument("expected ')' at the end of '" + t + "'");
  c.name = trim(t.substr(0, open));
  c.has_parens = true;
  const std::string inner = t.substr(open + 1, t.size() - open - 2);
  if (!trim(inner).empty()) c.args = split_top(inner, ',');
  return c;
}

std::string strip_parens(const std::string& s, char open, char close) {
  const std::string t = trim(s);
  if (t.size() >= 2 && t.front() == open && t.back() == close) return t.substr(1, t.size() - 2);
  return t;
}

double parse_real(const std::string& text) {
  const cplx v = parse_complex(text);
  if (v.imag() != 0.0) throw std::invalid_argument("expected a real number, got '" + text + "'");
  return v.real();
}

std::vector<cplx> parse_point(const std::string& text, std::size_t n) {
  std::vector<cplx> out;
  for (const auto& part : split_top(strip_parens(text, '(', ')'), ',')) out.push_back(parse_complex(part));
  if (out.size() != n) {
    throw std::invalid_argument("point '" + text + "' has " + std::to_string(out.size()) + " coordinates, expected " +
                                std::to_string(n));
  }
  return out;
}

ComplexVector to_complex_vector(const std::vector<cplx>& v) {
  ComplexVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t j = 0; j < v.size(); ++j) out(static_cast<Eigen::Index>(j)) = v[j];
  return out;
}

RealVector to_real_vector(const std::vector<cplx>& v, const std::string& what) {
  RealVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j].imag() != 0.0) throw std::invalid_argument(what + ": coordinates must be real");
    out(static_cast<Eigen::Index>(j)) = v[j].real();
  }
  return out;
}

void require_args(const Call& c, std::size_t lo, std::size_t hi) {
  if (c.args.size() < lo || c.args.size() > hi) {
    throw std::invalid_argument(c.name + ": expected " + (lo == hi ? std::to_string(lo) : std::to_string(lo) + ".." + std::to_string(hi)) +
                                " arguments, got " + std::to_string(c.args.size()));
  }
}

// Options of the form key = value after the leading positional arguments.
struct DensityArgs {
  std::string expr;
  std::optional<double> sigma;
  std::optional<std::vector<cplx>> center;
};

DensityArgs density_args(const Call& c, std::size_t n) {
  if (c.args.empty()) throw std::invalid_argument("density: missing expression");
  DensityArgs d;
  d.expr = c.args[0];
  for (std::size_t i = 1; i < c.args.size(); ++i) {
    const auto eq = c.args[i].find('=');
    if (eq == std::string::npos) throw std::invalid_argument("density: expected key = value, got '" + c.args[i] + "'");
    const std::string key = trim(c.args[i].substr(0, eq));
    const std::string val = trim(c.args[i].substr(eq + 1));
    if (key == "sigma") {
      d.sigma = parse_real(val);
      if (!(*d.sigma > 0.0)) throw std::invalid_argument("density: sigma must be positive");
    } else if (key == "center") {
      d.center = parse_point(val, n);
    } else {
      throw std::invalid_argument("density: unknown option '" + key + "'");
    }
  }
  if (d.center && !d.sigma) throw std::invalid_argument("density: center requires sigma");
  return d;
}

}  // namespace

std::vector<std::vector<cplx>> parse_complex_rows(const std::string& text) {
  std::vector<std::vector<cplx>> rows;
  for (const auto& row : split_top(strip_parens(text, '[', ']'), ';')) {
    std::vector<cplx> r;
    for (const auto& e : split_top(row, ',')) r.push_back(parse_complex(e));
    rows.push_back(std::move(r));
  }
  return rows;
}

RealMeasure parse_real_measure(const std::string& text, std::size_t n) {
  const Call c = parse_call(text);
  if (c.name == "lebesgue") {
    if (c.has_parens && !c.args.empty()) throw std::invalid_argument("lebesgue takes no arguments");
    return RealMeasure::lebesgue(n);
  }
  if (c.name == "dirac") {
    require_args(c, n, n);
    std::vector<cplx> p;
    for (const auto& a : c.args) p.push_back(parse_complex(a));
    return RealMeasure::dirac(to_real_vector(p, "dirac"));
  }
  if (c.name == "atoms") {
    if (c.args.empty()) throw std::invalid_argument("atoms: no atoms given");
    std::vector<RealVector> pts;
    std::vector<cplx> ws;
    for (const auto& a : c.args) {
      const auto parts = split_top(a, '@');
      if (parts.size() != 2) throw std::invalid_argument("atoms: expected 'weight @ point', got '" + a + "'");
      ws.push_back(parse_complex(parts[0]));
      pts.push_back(to_real_vector(parse_point(parts[1], n), "atoms"));
    }
    return RealMeasure::atoms(std::move(pts), std::move(ws));
  }
  if (c.name == "gaussian") {
    if (c.args.size() != 1 && c.args.size() != 1 + n) {
      throw std::invalid_argument("gaussian: expected sigma or sigma plus " + std::to_string(n) + " center coordinates");
    }
    const double sigma = parse_real(c.args[0]);
    std::optional<RealVector> center;
    if (c.args.size() > 1) {
      std::vector<cplx> p;
      for (std::size_t j = 1; j < c.args.size(); ++j) p.push_back(parse_complex(c.args[j]));
      center = to_real_vector(p, "gaussian");
    }
    return RealMeasure::gaussian(n, sigma, center);
  }
  if (c.name == "density") {
    const DensityArgs d = density_args(c, n);
    const Expression e = Expression::parse(d.expr, n);
    std::optional<GaussianEnvelope> env;
    if (d.sigma) {
      env = GaussianEnvelope{d.center ? to_complex_vector(*d.center) : ComplexVector::Zero(static_cast<Eigen::Index>(n)),
                             *d.sigma};
    }
    const std::size_t dim = n;
    auto f = [e, dim](const RealVector& t) -> cplx {
      const std::vector<double> zeros(dim, 0.0);
      return e(std::span<const double>(t.data(), dim), zeros);
    };
    return RealMeasure::density(n, f, env, "density(" + d.expr + ")");
  }
  throw std::invalid_argument("unknown real measure '" + c.name + "'");
}

Measure parse_measure(const std::string& text, std::size_t n) {
  if (n == 0) throw std::invalid_argument("measure: dimension must be >= 1");
  const Call c = parse_call(text);
  if (c.name == "lebesgue") {
    if (c.has_parens && !c.args.empty()) throw std::invalid_argument("lebesgue takes no arguments");
    return Measure::lebesgue(n);
  }
  if (c.name == "dirac") {
    require_args(c, n, n);
    std::vector<cplx> p;
    for (const auto& a : c.args) p.push_back(parse_complex(a));
    return Measure::dirac(to_complex_vector(p));
  }
  if (c.name == "atoms") {
    if (c.args.empty()) throw std::invalid_argument("atoms: no atoms given");
    std::vector<ComplexVector> pts;
    std::vector<cplx> ws;
    for (const auto& a : c.args) {
      const auto parts = split_top(a, '@');
      if (parts.size() != 2) throw std::invalid_argument("atoms: expected 'weight @ point', got '" + a + "'");
      ws.push_back(parse_complex(parts[0]));
      pts.push_back(to_complex_vector(parse_point(parts[1], n)));
    }
    return Measure::atoms(std::move(pts), std::move(ws));
  }
  if (c.name == "gaussian") {
    if (c.args.size() != 1 && c.args.size() != 1 + n) {
      throw std::invalid_argument("gaussian: expected sigma or sigma plus " + std::to_string(n) + " center coordinates");
    }
    const double sigma = parse_real(c.args[0]);
    std::optional<ComplexVector> center;
    if (c.args.size() > 1) {
      std::vector<cplx> p;
      for (std::size_t j = 1; j < c.args.size(); ++j) p.push_back(parse_complex(c.args[j]));
      center = to_complex_vector(p);
    }
    return Measure::gaussian(n, sigma, center);
  }
  if (c.name == "density") {
    const DensityArgs d = density_args(c, n);
    const Expression e = Expression::parse(d.expr, n);
    std::optional<GaussianEnvelope> env;
    if (d.sigma) {
      env = GaussianEnvelope{d.center ? to_complex_vector(*d.center) : ComplexVector::Zero(static_cast<Eigen::Index>(n)),
                             *d.sigma};
    }
    const std::size_t dim = n;
    auto f = [e, dim](const ComplexVector& w) -> cplx {
      std::vector<double> x(dim), y(dim);
      for (std::size_t j = 0; j < dim; ++j) {
        x[j] = w(static_cast<Eigen::Index>(j)).real();
        y[j] = w(static_cast<Eigen::Index>(j)).imag();
      }
      return e(x, y);
    };
    return Measure::density(n, f, env, "density(" + d.expr + ")");
  }
  if (c.name == "horizontal") {
    require_args(c, 1, 1);
    return Measure::horizontal(parse_real_measure(c.args[0], n));
  }
  if (c.name == "alpha_horizontal") {
    require_args(c, 1 + n, 1 + n);
    std::vector<int> alpha;
    for (std::size_t j = 1; j < c.args.size(); ++j) {
      const double a = parse_real(c.args[j]);
      if (a != std::round(a)) throw std::invalid_argument("alpha_horizontal: alpha entries must be integers");
      alpha.push_back(static_cast<int>(a));
    }
    return Measure::alpha_horizontal(parse_real_measure(c.args[0], n), alpha);
  }
  if (c.name == "weight") {
    require_args(c, 1 + n, 1 + n);
    std::vector<int> doubled;
    for (std::size_t j = 1; j < c.args.size(); ++j) {
      const double p = parse_real(c.args[j]);
      if (2.0 * p != std::round(2.0 * p)) throw std::invalid_argument("weight: exponents must be multiples of 1/2");
      doubled.push_back(static_cast<int>(std::lround(2.0 * p)));
    }
    return weight(parse_measure(c.args[0], n), WeightExponent::from_doubled(doubled));
  }
  if (c.name == "pushforward") {
    require_args(c, 2, 2);
    const auto rows = parse_complex_rows(c.args[1]);
    if (rows.size() != n) throw std::invalid_argument("pushforward: matrix must have n rows");
    ComplexMatrix X(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != n) throw std::invalid_argument("pushforward: matrix must have n columns");
      for (std::size_t j = 0; j < n; ++j) X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
    return pushforward(parse_measure(c.args[0], n), X);
  }
  throw std::invalid_argument("unknown measure '" + c.name + "'");
}

namespace {

const std::vector<std::string> key_order = {
    "command", "n", "D", "measure", "measure2", "two_k", "two_p", "frame", "rotation",
    "moment_order", "spectral_order", "radial_order", "angular_order",
    "window", "spacing", "r", "points", "tolerance", "seed", "grid_lo", "grid_hi", "grid_count"};

long long parse_integer(const ExperimentConfig& cfg, const std::string& key, const std::string& v) {
  std::size_t used = 0;
  long long out = 0;
  try {
    out = std::stoll(v, &used);
  } catch (const std::exception&) {
    cfg.fail(key, "expected an integer, got '" + v + "'");
  }
  if (used != v.size()) cfg.fail(key, "expected an integer, got '" + v + "'");
  return out;
}

double parse_number(const ExperimentConfig& cfg, const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    cfg.fail(key, "expected a number, got '" + v + "'");
  }
  if (used != v.size() || !std::isfinite(out)) cfg.fail(key, "expected a finite number, got '" + v + "'");
  return out;
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  for (auto& part : split_top(v, ',')) out.push_back(part);
  return out;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class T, class F>
std::string join(const std::vector<T>& v, F&& fmt) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += fmt(v[i]);
  }
  return out;
}

void validate(ExperimentConfig& cfg) {
  if (cfg.command.empty()) cfg.fail("command", "missing required key");
  if (std::find(known_commands.begin(), known_commands.end(), cfg.command) == known_commands.end()) {
    cfg.fail("command", "unknown command '" + cfg.command + "'");
  }
  if (cfg.n < 1 || cfg.n > 4) cfg.fail("n", "dimension must be in [1, 4]");
  if (cfg.D < 0) cfg.fail("D", "truncation degree must be >= 0");
  const auto check_doubled = [&](const std::string& key, const std::vector<int>& v) {
    if (!v.empty() && v.size() != cfg.n) cfg.fail(key, "expected " + std::to_string(cfg.n) + " entries");
    for (int d : v) {
      if (d < 0) cfg.fail(key, "entries must be >= 0");
    }
  };
  check_doubled("two_k", cfg.two_k);
  check_doubled("two_p", cfg.two_p);
  if (!cfg.r.empty() && cfg.r.size() != cfg.n) cfg.fail("r", "expected " + std::to_string(cfg.n) + " radii");
  for (double r : cfg.r) {
    if (!(r > 0.0)) cfg.fail("r", "radii must be positive");
  }
  const auto check_order = [&](const std::string& key, int v) {
    if (v < 1 || v > 200) cfg.fail(key, "quadrature order must be in [1, 200]");
  };
  check_order("moment_order", cfg.quadrature.moment_order);
  check_order("spectral_order", cfg.quadrature.spectral_order);
  check_order("radial_order", cfg.quadrature.radial_order);
  if (cfg.quadrature.angular_order < 1) cfg.fail("angular_order", "must be >= 1");
  if (!(cfg.spacing > 0.0)) cfg.fail("spacing", "must be positive");
  if (!(cfg.window >= 0.0)) cfg.fail("window", "must be >= 0");
  if (cfg.grid_count < 1) cfg.fail("grid_count", "must be >= 1");
  if (!(cfg.grid_hi > cfg.grid_lo)) cfg.fail("grid_hi", "must exceed grid_lo");

  const bool needs_measure = true;
  if (needs_measure && cfg.measure.empty()) cfg.fail("measure", "missing required key");
  try {
    parse_measure(cfg.measure, cfg.n);
  } catch (const std::exception& e) {
    cfg.fail("measure", e.what());
  }
  if (cfg.command == "commutativity" && cfg.measure2.empty()) cfg.fail("measure2", "commutativity needs a second measure");
  if (!cfg.measure2.empty()) {
    try {
      parse_measure(cfg.measure2, cfg.n);
    } catch (const std::exception& e) {
      cfg.fail("measure2", e.what());
    }
  }
  if (cfg.command == "lagrangian" && cfg.frame.empty()) cfg.fail("frame", "lagrangian needs a frame");
  if (!cfg.frame.empty() && cfg.frame != "real" && cfg.frame != "imaginary" && cfg.frame != "diagonal") {
    try {
      const auto rows = parse_complex_rows(cfg.frame);
      if (rows.size() != cfg.n) cfg.fail("frame", "expected n rows (one basis vector per row)");
      for (const auto& row : rows) {
        if (row.size() != 2 * cfg.n) cfg.fail("frame", "each row must have 2n real entries");
        for (cplx v : row) {
          if (v.imag() != 0.0) cfg.fail("frame", "entries must be real");
        }
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      cfg.fail("frame", e.what());
    }
  }
  if (cfg.rotation != "auto") {
    try {
      const auto rows = parse_complex_rows(cfg.rotation);
      if (rows.size() != cfg.n) cfg.fail("rotation", "expected an n x n matrix");
      for (const auto& row : rows) {
        if (row.size() != cfg.n) cfg.fail("rotation", "expected an n x n matrix");
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      cfg.fail("rotation", e.what());
    }
  }
  if (!cfg.points.empty()) {
    try {
      config_points(cfg);
    } catch (const std::exception& e) {
      cfg.fail("points", e.what());
    }
  }
}

}  // namespace

ExperimentConfig parse_config(std::istream& in, const std::string& source) {
  ExperimentConfig cfg;
  cfg.source = source;
  const std::set<std::string> keys(key_order.begin(), key_order.end());
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(source, line_no, "", "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!keys.count(key)) throw ConfigError(source, line_no, key, "unknown key");
    if (cfg.lines.count(key)) {
      throw ConfigError(source, line_no, key, "duplicate key (first set on line " + std::to_string(cfg.lines[key]) + ")");
    }
    cfg.lines[key] = line_no;
    if (value.empty()) throw ConfigError(source, line_no, key, "empty value");

    const auto doubled_list = [&](std::vector<int>& out) {
      for (const auto& part : split_list(value)) out.push_back(static_cast<int>(parse_integer(cfg, key, part)));
    };
    if (key == "command") {
      cfg.command = value;
    } else if (key == "n") {
      const long long v = parse_integer(cfg, key, value);
      if (v < 1) cfg.fail(key, "dimension must be >= 1");
      cfg.n = static_cast<std::size_t>(v);
    } else if (key == "D") {
      cfg.D = static_cast<int>(parse_integer(cfg, key, value));
    } else if (key == "measure") {
      cfg.measure = value;
    } else if (key == "measure2") {
      cfg.measure2 = value;
    } else if (key == "two_k") {
      doubled_list(cfg.two_k);
    } else if (key == "two_p") {
      doubled_list(cfg.two_p);
    } else if (key == "frame") {
      cfg.frame = value;
    } else if (key == "rotation") {
      cfg.rotation = value;
    } else if (key == "moment_order") {
      cfg.quadrature.moment_order = static_cast<int>(parse_integer(cfg, key, value));
    } else if (key == "spectral_order") {
      cfg.quadrature.spectral_order = static_cast<int>(parse_integer(cfg, key, value));
    } else if (key == "radial_order") {
      cfg.quadrature.radial_order = static_cast<int>(parse_integer(cfg, key, value));
    } else if (key == "angular_order") {
      cfg.quadrature.angular_order = static_cast<int>(parse_integer(cfg, key, value));
    } else if (key == "window") {
      cfg.window = parse_number(cfg, key, value);
    } else if (key == "spacing") {
      cfg.spacing = parse_number(cfg, key, value);
    } else if (key == "r") {
      for (const auto& part : split_list(value)) cfg.r.push_back(parse_number(cfg, key, part));
    } else if (key == "points") {
      cfg.points = value;
    } else if (key == "tolerance") {
      cfg.tolerance = parse_number(cfg, key, value);
    } else if (key == "seed") {
      const long long v = parse_integer(cfg, key, value);
      if (v < 0) cfg.fail(key, "seed must be >= 0");
      cfg.seed = static_cast<std::uint64_t>(v);
    } else if (key == "grid_lo") {
      cfg.grid_lo = parse_number(cfg, key, value);
    } else if (key == "grid_hi") {
      cfg.grid_hi = parse_number(cfg, key, value);
    } else if (key == "grid_count") {
      cfg.grid_count = static_cast<int>(parse_integer(cfg, key, value));
    }
  }
  validate(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, 0, "", "cannot open config file");
  return parse_config(in, path);
}

std::string resolved_config(const ExperimentConfig& cfg) {
  std::ostringstream os;
  const auto ints = [](int v) { return std::to_string(v); };
  os << "command = " << cfg.command << '\n';
  os << "n = " << cfg.n << '\n';
  os << "D = " << cfg.D << '\n';
  os << "measure = " << cfg.measure << '\n';
  if (!cfg.measure2.empty()) os << "measure2 = " << cfg.measure2 << '\n';
  os << "two_k = " << (cfg.two_k.empty() ? join(std::vector<int>(cfg.n, 0), ints) : join(cfg.two_k, ints)) << '\n';
  if (!cfg.two_p.empty()) os << "two_p = " << join(cfg.two_p, ints) << '\n';
  if (!cfg.frame.empty()) os << "frame = " << cfg.frame << '\n';
  os << "rotation = " << cfg.rotation << '\n';
  os << "moment_order = " << cfg.quadrature.moment_order << '\n';
  os << "spectral_order = " << cfg.quadrature.spectral_order << '\n';
  os << "radial_order = " << cfg.quadrature.radial_order << '\n';
  os << "angular_order = " << cfg.quadrature.angular_order << '\n';
  os << "window = " << format_double(cfg.window) << '\n';
  os << "spacing = " << format_double(cfg.spacing) << '\n';
  os << "r = " << (cfg.r.empty() ? join(std::vector<double>(cfg.n, 1.0), format_double) : join(cfg.r, format_double))
     << '\n';
  if (!cfg.points.empty()) os << "points = " << cfg.points << '\n';
  if (cfg.tolerance >= 0.0) os << "tolerance = " << format_double(cfg.tolerance) << '\n';
  os << "seed = " << cfg.seed << '\n';
  os << "grid_lo = " << format_double(cfg.grid_lo) << '\n';
  os << "grid_hi = " << format_double(cfg.grid_hi) << '\n';
  os << "grid_count = " << cfg.grid_count << '\n';
  return os.str();
}

std::vector<ComplexVector> config_points(const ExperimentConfig& cfg) {
  std::vector<ComplexVector> out;
  if (cfg.points.empty()) {
    for (cplx v : {cplx(0.0, 0.0), cplx(0.5, 0.0), cplx(0.3, 0.4), cplx(-0.6, 0.7), cplx(1.0, -0.5)}) {
      out.push_back(ComplexVector::Constant(static_cast<Eigen::Index>(cfg.n), v));
    }
    return out;
  }
  for (const auto& row : parse_complex_rows(cfg.points)) {
    if (row.size() != cfg.n) {
      throw std::invalid_argument("each point needs " + std::to_string(cfg.n) + " coordinates");
    }
    ComplexVector z(static_cast<Eigen::Index>(cfg.n));
    for (std::size_t j = 0; j < cfg.n; ++j) z(static_cast<Eigen::Index>(j)) = row[j];
    out.push_back(std::move(z));
  }
  return out;
}

}  // namespace focklab
