#include "io.hpp"

#include <chrono>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace phaseflow::io {

namespace {

constexpr char kMagic[8] = {'P', 'H', 'F', 'L', 'D', '\0', '\0', '\1'};

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
}

std::uint32_t get_u32(const std::string& in, std::size_t& pos) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[pos++])) << (8 * i);
  return v;
}

double get_f64(const std::string& in, std::size_t& pos) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[pos++])) << (8 * i);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

void write_file(const std::filesystem::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(static_cast<bool>(out), ErrorCode::UsageError, "cannot open " + path.string() + " for writing");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
}

}  // namespace

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

CsvWriter::CsvWriter(std::filesystem::path path, bool timestamp_header) : path_(std::move(path)) {
  if (timestamp_header) {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[64];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    buffer_ += std::string("# generated ") + buf + "\n";
  }
}

void CsvWriter::header(const std::vector<std::string>& columns) {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) buffer_ += ',';
    buffer_ += columns[i];
  }
  buffer_ += '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) buffer_ += ',';
    buffer_ += format_g17(values[i]);
  }
  buffer_ += '\n';
}

void CsvWriter::row_mixed(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) buffer_ += ',';
    buffer_ += cells[i];
  }
  buffer_ += '\n';
}

void CsvWriter::close() {
  if (closed_) return;
  write_file(path_, buffer_);
  closed_ = true;
}

void write_field(const std::filesystem::path& path, const PhaseField& field) {
  const PhaseGrid& g = field.grid();
  std::string data(kMagic, 8);
  put_u32(data, static_cast<std::uint32_t>(g.dim()));
  for (int a = 0; a < g.axes_count(); ++a) put_u32(data, static_cast<std::uint32_t>(g.axis(a).count));
  for (int a = 0; a < g.axes_count(); ++a) {
    put_f64(data, g.axis(a).min);
    put_f64(data, g.axis(a).max);
  }
  for (const auto& v : field.values()) {
    put_f64(data, v.real());
    put_f64(data, v.imag());
  }
  write_file(path, data);
}

void write_field(const std::filesystem::path& path, const PositionWavefunction& psi) {
  const PositionGrid& g = psi.grid();
  std::string data(kMagic, 8);
  put_u32(data, static_cast<std::uint32_t>(g.dim()));
  for (int a = 0; a < g.dim(); ++a) put_u32(data, static_cast<std::uint32_t>(g.axis(a).count));
  for (int a = 0; a < g.dim(); ++a) {
    put_f64(data, g.axis(a).min);
    put_f64(data, g.axis(a).max);
  }
  for (const auto& v : psi.values()) {
    put_f64(data, v.real());
    put_f64(data, v.imag());
  }
  write_file(path, data);
}

LoadedField read_field(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::UsageError, "cannot open " + path.string());
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  require(data.size() >= 12 && std::memcmp(data.data(), kMagic, 8) == 0, ErrorCode::UsageError,
          path.string() + " is not a PHFLD dump");
  std::size_t pos = 8;
  const std::uint32_t dim = get_u32(data, pos);
  require(dim == 1 || dim == 2, ErrorCode::UsageError, "unsupported dump dimensionality");

  auto total_size = [&](std::uint32_t naxes) -> std::size_t {
    std::size_t p = 12;
    std::size_t count = 1;
    if (data.size() < p + 4 * naxes) return 0;
    std::size_t probe = p;
    for (std::uint32_t a = 0; a < naxes; ++a) count *= get_u32(data, probe);
    return 12 + 4u * naxes + 16u * naxes + 16u * count;
  };

  LoadedField out;
  std::uint32_t naxes;
  if (total_size(2 * dim) == data.size()) {
    out.is_phase = true;
    naxes = 2 * dim;
  } else if (total_size(dim) == data.size()) {
    out.is_phase = false;
    naxes = dim;
  } else {
    fail(ErrorCode::UsageError, path.string() + " has inconsistent length");
  }

  std::vector<std::uint32_t> counts(naxes);
  for (auto& c : counts) c = get_u32(data, pos);
  std::vector<AxisSpec> axes(naxes);
  for (std::uint32_t a = 0; a < naxes; ++a) {
    axes[a].min = get_f64(data, pos);
    axes[a].max = get_f64(data, pos);
    axes[a].count = static_cast<int>(counts[a]);
  }

  if (out.is_phase) {
    std::vector<AxisSpec> q(axes.begin(), axes.begin() + dim);
    std::vector<AxisSpec> p(axes.begin() + dim, axes.end());
    out.phase = PhaseField(PhaseGrid::make(static_cast<int>(dim), q, p));
    for (auto& v : out.phase.values()) {
      const double re = get_f64(data, pos);
      const double im = get_f64(data, pos);
      v = Complex{re, im};
    }
  } else {
    out.position = PositionWavefunction(PositionGrid::make(static_cast<int>(dim), axes));
    for (auto& v : out.position.values()) {
      const double re = get_f64(data, pos);
      const double im = get_f64(data, pos);
      v = Complex{re, im};
    }
  }
  return out;
}

}  // namespace phaseflow::io
