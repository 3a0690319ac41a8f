#include <p1n/snapshot.hpp>

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace p1n {

namespace {

static_assert(std::endian::native == std::endian::little,
              "snapshot layout assumes a little-endian host");

constexpr char kMagic[4] = {'P', '1', 'N', '1'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& os, std::uint32_t v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}
void put_i32(std::ostream& os, std::int32_t v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}
void put_f64(std::ostream& os, double v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint32_t get_u32(std::istream& is) {
  std::uint32_t v = 0;
  if (!is.read(reinterpret_cast<char*>(&v), sizeof v))
    throw std::runtime_error("snapshot: truncated file");
  return v;
}
std::int32_t get_i32(std::istream& is) {
  std::int32_t v = 0;
  if (!is.read(reinterpret_cast<char*>(&v), sizeof v))
    throw std::runtime_error("snapshot: truncated file");
  return v;
}
double get_f64(std::istream& is) {
  double v = 0.0;
  if (!is.read(reinterpret_cast<char*>(&v), sizeof v))
    throw std::runtime_error("snapshot: truncated file");
  return v;
}

std::uint32_t kind_code(const std::string& kind) {
  if (kind == "trivial") return 0;
  if (kind == "vector") return 1;
  if (kind == "spin") return 2;
  if (kind == "o4") return 3;
  throw std::runtime_error("snapshot: unknown representation kind " + kind);
}

LittleGroupRep rebuild_rep(int n, std::uint32_t code, bool lorentz, double s, double t) {
  LittleGroupRep rep;
  switch (code) {
    case 0:
      rep = trivial_rep(n);
      break;
    case 1:
      rep = vector_rep(n);
      break;
    case 2:
      rep = so3_spin(s);
      break;
    case 3:
      rep = o4_irrep(s, t).rep;
      break;
    default:
      throw std::runtime_error("snapshot: unknown representation code");
  }
  if (lorentz) rep = tilde_continue(rep);
  return rep;
}

}  // namespace

void save_snapshot(const std::string& path, const GridWaveFunction& f) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("snapshot: cannot open " + path + " for writing");

  os.write(kMagic, sizeof kMagic);
  put_u32(os, kVersion);
  put_u32(os, static_cast<std::uint32_t>(f.grid.dim()));
  put_u32(os, kind_code(f.rep.kind));
  put_u32(os, f.rep.lorentz ? 1 : 0);
  put_i32(os, static_cast<std::int32_t>(std::lround(2.0 * f.rep.s)));
  put_i32(os, static_cast<std::int32_t>(std::lround(2.0 * f.rep.t)));
  put_u32(os, static_cast<std::uint32_t>(f.rep.dim));
  put_u32(os, static_cast<std::uint32_t>(f.cls));
  put_i32(os, static_cast<std::int32_t>(f.eps));
  put_u32(os, f.space == Space::momentum ? 0 : 1);
  put_f64(os, f.mass);
  for (const auto& ax : f.grid.axes) {
    put_f64(os, ax.min);
    put_f64(os, ax.step);
    put_u32(os, static_cast<std::uint32_t>(ax.count));
  }
  for (const auto& comp : f.data)
    for (const Complex& v : comp) {
      put_f64(os, v.real());
      put_f64(os, v.imag());
    }
  if (!os) throw std::runtime_error("snapshot: write failed for " + path);
}

GridWaveFunction load_snapshot(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("snapshot: cannot open " + path);

  char magic[4] = {};
  if (!is.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
    throw std::runtime_error("snapshot: bad magic in " + path);
  if (get_u32(is) != kVersion) throw std::runtime_error("snapshot: unsupported version");

  const int n = static_cast<int>(get_u32(is));
  if (n < 1 || n > 16) throw std::runtime_error("snapshot: implausible dimension");
  const std::uint32_t code = get_u32(is);
  const bool lorentz = get_u32(is) != 0;
  const double s = get_i32(is) / 2.0;
  const double t = get_i32(is) / 2.0;
  const int rep_dim = static_cast<int>(get_u32(is));
  const int cls = static_cast<int>(get_u32(is));
  const int eps = static_cast<int>(get_i32(is));
  const std::uint32_t space = get_u32(is);
  const double mass = get_f64(is);
  if (space > 1) throw std::runtime_error("snapshot: bad space tag");

  GridWaveFunction f;
  f.grid.axes.resize(static_cast<std::size_t>(n));
  for (auto& ax : f.grid.axes) {
    ax.min = get_f64(is);
    ax.step = get_f64(is);
    ax.count = static_cast<int>(get_u32(is));
    if (ax.count < 2 || ax.step <= 0.0) throw std::runtime_error("snapshot: bad axis");
  }
  f.space = space == 0 ? Space::momentum : Space::position;
  f.cls = cls;
  f.mass = mass;
  f.eps = eps;
  f.rep = rebuild_rep(n, code, lorentz, s, t);
  if (f.rep.dim != rep_dim || f.rep.n != n)
    throw std::runtime_error("snapshot: representation does not match the stored labels");

  f.data.assign(static_cast<std::size_t>(rep_dim), std::vector<Complex>(f.grid.total()));
  for (auto& comp : f.data)
    for (Complex& v : comp) {
      const double re = get_f64(is);
      const double im = get_f64(is);
      v = Complex(re, im);
    }
  char extra = 0;
  if (is.read(&extra, 1)) throw std::runtime_error("snapshot: trailing bytes in " + path);
  return f;
}

}  // namespace p1n
