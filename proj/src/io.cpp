#include "potentia/io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

namespace potentia::io {

namespace fs = std::filesystem;

namespace {

constexpr char kMagic[8] = {'P', 'O', 'T', 'F', 'I', 'E', 'L', 'D'};

template <class T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw InputError("field snapshot: truncated header");
  return v;
}

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

std::vector<double> read_csv_numbers(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::vector<double> out;
  std::string line;
  while (std::getline(in, line)) {
    for (char& c : line)
      if (c == ',' || c == ';' || c == '\t') c = ' ';
    std::istringstream ls(line);
    double v;
    while (ls >> v) out.push_back(v);
  }
  return out;
}

std::vector<double> read_binary_doubles(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  in.seekg(0, std::ios::end);
  const auto bytes = static_cast<std::size_t>(in.tellg());
  in.seekg(0);
  if (bytes % sizeof(double) != 0) throw InputError(path.string() + ": size is not a multiple of 8 bytes");
  std::vector<double> out(bytes / sizeof(double));
  in.read(reinterpret_cast<char*>(out.data()), static_cast<std::streamsize>(bytes));
  return out;
}

std::vector<double> read_numbers(const fs::path& path) {
  return path.extension() == ".csv" ? read_csv_numbers(path) : read_binary_doubles(path);
}

LinearMap matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw InputError("operator matrix must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  LinearMap m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) throw InputError("operator matrix rows differ in length");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

}  // namespace

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_object() && j.contains("re")) return {j.at("re").get<double>(), j.value("im", 0.0)};
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  throw InputError("complex value must be {re, im}, [re, im] or a number");
}

json complex_to_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

HomogeneousOperator operator_from_json(const json& j) {
  try {
    if (j.contains("catalog")) return catalog::by_name(j.at("catalog").get<std::string>(), j.at("dim").get<int>());
    const int dim = j.at("dim").get<int>();
    const int order = j.at("order").get<int>();
    const int e_dim = j.at("e_dim").get<int>();
    const int f_dim = j.at("f_dim").get<int>();
    std::map<MultiIndex, LinearMap> terms;
    for (const auto& t : j.at("terms")) {
      MultiIndex a(t.at("alpha").get<std::vector<int>>());
      if (terms.count(a)) throw InputError("operator: duplicate multi-index");
      terms.emplace(std::move(a), matrix_from_json(t.at("matrix")));
    }
    return HomogeneousOperator(dim, order, e_dim, f_dim, std::move(terms));
  } catch (const json::exception& e) {
    throw InputError(std::string("operator description: ") + e.what());
  }
}

json operator_to_json(const HomogeneousOperator& op) {
  json terms = json::array();
  for (const auto& [a, m] : op.terms()) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
      rows.push_back(std::move(row));
    }
    terms.push_back(json{{"alpha", a.exponents}, {"matrix", std::move(rows)}});
  }
  return json{{"dim", op.dim()}, {"order", op.order()}, {"e_dim", op.e_dim()}, {"f_dim", op.f_dim()}, {"terms", std::move(terms)}};
}

HomogeneousOperator load_operator(const fs::path& path) { return operator_from_json(read_json(path)); }

Grid parse_grid(const std::string& spec, int default_dim) {
  int n = 0;
  int dim = default_dim;
  double L = 0.0;
  std::istringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("grid spec items must be key=value: " + item);
    const std::string key = item.substr(0, eq);
    const std::string val = item.substr(eq + 1);
    try {
      std::size_t used = 0;
      if (key == "n") n = std::stoi(val, &used);
      else if (key == "L") L = std::stod(val, &used);
      else if (key == "N") dim = std::stoi(val, &used);
      else throw InputError("unknown grid key: " + key);
      if (used != val.size()) throw InputError("bad grid value: " + item);
    } catch (const std::logic_error&) {
      throw InputError("bad grid value: " + item);
    }
  }
  return Grid(dim, L, n);
}

Grid grid_from_json(const json& j) {
  try {
    return Grid(j.value("dim", j.value("N", 2)), j.at("L").get<double>(), j.at("n").get<int>());
  } catch (const json::exception& e) {
    throw InputError(std::string("grid description: ") + e.what());
  }
}

json grid_to_json(const Grid& g) { return json{{"dim", g.dim()}, {"L", g.half_width()}, {"n", g.n()}}; }

Weight weight_from_json(const json& j, const fs::path& base, int default_dim) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "power") return Weight::power(j.value("dim", default_dim), j.at("alpha").get<double>());
    if (kind == "grid") {
      const Grid g = grid_from_json(j.at("grid"));
      return Weight::samples(g, read_numbers(resolve(base, j.at("values_path").get<std::string>())));
    }
    throw InputError("weight kind must be power or grid");
  } catch (const json::exception& e) {
    throw InputError(std::string("weight description: ") + e.what());
  }
}

Weight parse_weight(const std::string& spec, int dim) {
  if (spec.rfind("power:", 0) == 0) {
    try {
      std::size_t used = 0;
      const double alpha = std::stod(spec.substr(6), &used);
      if (used != spec.size() - 6) throw InputError("bad power weight: " + spec);
      return Weight::power(dim, alpha);
    } catch (const std::logic_error&) {
      throw InputError("bad power weight: " + spec);
    }
  }
  if (spec == "unit" || spec == "1") return Weight::unit(dim);
  const fs::path path(spec);
  return weight_from_json(read_json(path), path.parent_path(), dim);
}

Measure measure_from_json(const json& j, const fs::path& base) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "atomic") {
      std::vector<Point> pts;
      for (const auto& p : j.at("points")) pts.push_back(p.get<Point>());
      std::vector<ComplexVector> vals;
      for (const auto& v : j.at("values")) {
        ComplexVector cv;
        if (v.is_array())
          for (const auto& z : v) cv.push_back(complex_from_json(z));
        else
          cv.push_back(complex_from_json(v));
        vals.push_back(std::move(cv));
      }
      int dim = j.value("dim", pts.empty() ? 0 : static_cast<int>(pts[0].size()));
      int comps = j.value("components", vals.empty() ? 0 : static_cast<int>(vals[0].size()));
      if (dim == 0 || comps == 0) throw InputError("empty atomic measure needs explicit dim and components");
      return Measure::atomic(dim, comps, std::move(pts), std::move(vals));
    }
    if (kind == "density") {
      const Grid g = grid_from_json(j.at("grid"));
      const int comps = j.value("components", 1);
      const auto nums = read_numbers(resolve(base, j.at("values_path").get<std::string>()));
      if (nums.size() != 2 * g.size() * static_cast<std::size_t>(comps))
        throw InputError("density values: expected n^N * components complex numbers");
      std::vector<Complex> data(g.size() * static_cast<std::size_t>(comps));
      for (std::size_t i = 0; i < data.size(); ++i) data[i] = {nums[2 * i], nums[2 * i + 1]};
      return Measure::density(Field(g, comps, std::move(data)));
    }
    throw InputError("measure kind must be atomic or density");
  } catch (const json::exception& e) {
    throw InputError(std::string("measure description: ") + e.what());
  }
}

json measure_to_json(const Measure& mu) {
  require(mu.is_atomic(), "measure_to_json: only atomic measures are written inline");
  const auto& a = mu.as_atomic();
  json vals = json::array();
  for (const auto& v : a.values) {
    json row = json::array();
    for (const auto& z : v) row.push_back(complex_to_json(z));
    vals.push_back(std::move(row));
  }
  return json{{"kind", "atomic"}, {"dim", a.dim}, {"components", a.components}, {"points", a.points}, {"values", std::move(vals)}};
}

Measure load_measure(const fs::path& path) { return measure_from_json(read_json(path), path.parent_path()); }

void write_field(const fs::path& path, const Field& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cannot write " + path.string());
  os.write(kMagic, sizeof(kMagic));
  put<std::int32_t>(os, f.grid().dim());
  put<double>(os, f.grid().half_width());
  put<std::int32_t>(os, f.grid().n());
  put<std::int32_t>(os, f.components());
  os.write(reinterpret_cast<const char*>(f.data().data()), static_cast<std::streamsize>(f.data().size() * sizeof(Complex)));
  if (!os) throw InputError("write failed: " + path.string());
}

Field read_field(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InputError("cannot open " + path.string());
  char magic[8];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) throw InputError(path.string() + ": not a field snapshot");
  const int dim = get<std::int32_t>(is);
  const double L = get<double>(is);
  const int n = get<std::int32_t>(is);
  const int d = get<std::int32_t>(is);
  const Grid g(dim, L, n);
  if (d < 1) throw InputError(path.string() + ": bad component count");
  std::vector<Complex> data(g.size() * static_cast<std::size_t>(d));
  is.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(data.size() * sizeof(Complex)));
  if (!is) throw InputError(path.string() + ": truncated data");
  return Field(g, d, std::move(data));
}

void write_field_csv(const fs::path& path, const Field& f) {
  std::ofstream os(path);
  if (!os) throw InputError("cannot write " + path.string());
  const Grid& g = f.grid();
  os.precision(17);
  os << (g.dim() == 1 ? "x" : "x,y");
  for (int c = 0; c < f.components(); ++c) os << ",re" << c << ",im" << c;
  os << '\n';
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto idx = g.axis_indices(i);
    if (g.dim() == 3 && idx[2] != g.n() / 2) continue;
    os << g.coordinate(idx[0]);
    if (g.dim() >= 2) os << ',' << g.coordinate(idx[1]);
    for (int c = 0; c < f.components(); ++c) os << ',' << f.at(i, c).real() << ',' << f.at(i, c).imag();
    os << '\n';
  }
}

}  // namespace potentia::io
