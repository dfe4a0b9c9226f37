#include "taupsd/harness/io.hpp"

#include <bit>
#include <cstdint>
#include <fstream>

#include "taupsd/errors.hpp"
#include "taupsd/harness/report.hpp"

namespace taupsd::harness {

namespace {

void put_le(std::ostream& os, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
  os.write(bytes, 8);
}

double get_le(std::istream& is) {
  unsigned char bytes[8];
  if (!is.read(reinterpret_cast<char*>(bytes), 8)) throw UsageError("dump: truncated binary file");
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

std::filesystem::path with_ext(const std::filesystem::path& stem, const char* ext) {
  return std::filesystem::path(stem.string() + ext);
}

void write_values(const std::filesystem::path& stem, const cplx* data, std::size_t count,
                  const nlohmann::json& header) {
  if (stem.has_parent_path()) std::filesystem::create_directories(stem.parent_path());
  std::ofstream bin(with_ext(stem, ".bin"), std::ios::binary);
  std::ofstream js(with_ext(stem, ".json"));
  if (!bin || !js) throw UsageError("dump: cannot write '" + stem.string() + "'");
  for (std::size_t k = 0; k < count; ++k) {
    put_le(bin, data[k].real());
    put_le(bin, data[k].imag());
  }
  js << header.dump(2) << '\n';
}

nlohmann::json read_header(const std::filesystem::path& stem) {
  std::ifstream js(with_ext(stem, ".json"));
  if (!js) throw UsageError("dump: cannot open header '" + stem.string() + ".json'");
  return nlohmann::json::parse(js);
}

std::vector<cplx> read_values(const std::filesystem::path& stem, std::size_t count) {
  std::ifstream bin(with_ext(stem, ".bin"), std::ios::binary);
  if (!bin) throw UsageError("dump: cannot open '" + stem.string() + ".bin'");
  std::vector<cplx> out(count);
  for (auto& v : out) {
    const double re = get_le(bin);
    v = {re, get_le(bin)};
  }
  return out;
}

Grid grid_from(const nlohmann::json& j) {
  return Grid(j.at("dim").get<int>(), j.at("N").get<int>(), j.at("L").get<double>());
}

}  // namespace

nlohmann::json grid_json(const Grid& g) {
  return {{"dim", g.dim()}, {"N", g.points_per_axis()}, {"L", g.half_width()}};
}

nlohmann::json endo_json(const Endo& tau) {
  nlohmann::json m = nlohmann::json::array();
  for (int r = 0; r < tau.dim(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < tau.dim(); ++c) row.push_back(tau.matrix(r, c));
    m.push_back(row);
  }
  return {{"matrix", m},
          {"det_tau", tau.det_tau},
          {"det_one_minus_tau", tau.det_one_minus_tau},
          {"class", to_string(tau.cls)}};
}

void write_grid_function(const std::filesystem::path& stem, const GridFunction& f) {
  nlohmann::json header = grid_json(f.grid);
  header["side"] = to_string(f.side);
  header["format"] = "complex128-le";
  header["count"] = f.values.size();
  write_values(stem, f.values.data(), f.values.size(), header);
}

GridFunction read_grid_function(const std::filesystem::path& stem) {
  const nlohmann::json h = read_header(stem);
  const Grid g = grid_from(h);
  const Side side = h.at("side").get<std::string>() == "space" ? Side::Space : Side::Frequency;
  return GridFunction(g, read_values(stem, g.size()), side);
}

void write_kernel(const std::filesystem::path& stem, const KernelMatrix& k) {
  nlohmann::json header = {{"grid", grid_json(k.grid)},
                           {"rows", k.values.rows()},
                           {"cols", k.values.cols()},
                           {"order", "row-major"},
                           {"format", "complex128-le"},
                           {"weight", k.weight},
                           {"tag", k.tag},
                           {"params", k.params}};
  header["tau"] = k.tau ? endo_json(*k.tau) : nlohmann::json(nullptr);
  const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = k.values;
  write_values(stem, rm.data(), static_cast<std::size_t>(rm.size()), header);
}

KernelMatrix read_kernel(const std::filesystem::path& stem) {
  const nlohmann::json h = read_header(stem);
  KernelMatrix k;
  k.grid = grid_from(h.at("grid"));
  const auto rows = h.at("rows").get<Eigen::Index>(), cols = h.at("cols").get<Eigen::Index>();
  const auto vals = read_values(stem, static_cast<std::size_t>(rows * cols));
  k.values = Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      vals.data(), rows, cols);
  k.weight = h.at("weight").get<double>();
  k.tag = h.at("tag").get<std::string>();
  k.params = h.at("params").get<std::map<std::string, double>>();
  if (!h.at("tau").is_null()) {
    const auto& m = h["tau"]["matrix"];
    Eigen::MatrixXd t(m.size(), m.size());
    for (std::size_t r = 0; r < m.size(); ++r)
      for (std::size_t c = 0; c < m.size(); ++c) t(r, c) = m[r][c].get<double>();
    k.tau = classify_endo(t);
  }
  return k;
}

nlohmann::json schatten_json(const SchattenReport& r) {
  nlohmann::json sv = nlohmann::json::array();
  const double cut = 1e-14 * r.op_norm();
  for (double s : r.singular_values)
    if (s > cut) sv.push_back(s);
  nlohmann::json norms = nlohmann::json::object();
  for (const auto& [p, v] : r.p_norms) norms[format_number(p)] = v;
  nlohmann::json out = {{"singular_values", sv},
                        {"rank_above_cutoff", sv.size()},
                        {"p_norms", norms},
                        {"grid", grid_json(r.grid)}};
  out["tau"] = r.tau ? endo_json(*r.tau) : nlohmann::json(nullptr);
  return out;
}

}  // namespace taupsd::harness
