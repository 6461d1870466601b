#include "ibex/cache_io.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "ibex/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "cache files are little-endian; add byte swapping for this platform");

namespace ibex {

namespace {

constexpr char kMagic[4] = {'I', 'B', 'C', 'T'};
constexpr std::uint32_t kFormatVersion = 1;

template <typename T>
void write_raw(std::ostream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_raw(std::istream& in, const char* what) {
  T value;
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw CacheError(std::string("cache file truncated while reading ") + what);
  return value;
}

}  // namespace

void cache_write(const CollisionTensor& tensor, const std::filesystem::path& path) {
  if (tensor.center_t_bar() != 1.0)
    throw CacheError("cache_write: only reference-temperature tensors are persisted");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CacheError("cache_write: cannot open " + path.string());

  out.write(kMagic, sizeof(kMagic));
  write_raw(out, kFormatVersion);
  write_raw(out, kIndexOrderingTag);
  write_raw(out, static_cast<std::uint32_t>(tensor.m()));
  write_raw(out, tensor.kernel().varpi);
  write_raw(out, tensor.kernel().e);
  write_raw(out, tensor.kernel().c_const);
  write_raw(out, tensor.drop_tol());
  write_raw(out, static_cast<std::uint64_t>(tensor.nnz()));
  for (int a = 0; a < tensor.rows(); ++a)
    for (std::int64_t i = tensor.row_begin(a); i < tensor.row_end(a); ++i) {
      write_raw(out, static_cast<std::uint32_t>(a));
      write_raw(out, tensor.entry_lambda(i));
      write_raw(out, tensor.entry_kappa(i));
      write_raw(out, tensor.entry_value(i));
    }
  if (!out) throw CacheError("cache_write: write failed for " + path.string());
}

CollisionTensor cache_read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CacheError("cache_read: cannot open " + path.string());

  char magic[4];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw CacheError("cache_read: not a coefficient cache file: " + path.string());
  const auto version = read_raw<std::uint32_t>(in, "version");
  if (version != kFormatVersion)
    throw CacheError("cache_read: unsupported cache format version " + std::to_string(version));
  const auto ordering = read_raw<std::uint32_t>(in, "ordering tag");
  if (ordering != kIndexOrderingTag)
    throw CacheError("cache_read: cache uses an incompatible basis ordering");
  const auto m = read_raw<std::uint32_t>(in, "expansion order");
  KernelSpec kernel;
  kernel.varpi = read_raw<double>(in, "varpi");
  kernel.e = read_raw<double>(in, "restitution");
  kernel.c_const = read_raw<double>(in, "kernel constant");
  const double drop_tol = read_raw<double>(in, "drop tolerance");
  const auto nnz = read_raw<std::uint64_t>(in, "record count");
  if (!kernel.valid()) throw CacheError("cache_read: header carries an invalid kernel");
  if (m > 64) throw CacheError("cache_read: implausible expansion order in header");

  CollisionTensor tensor(static_cast<int>(m), kernel, drop_tol);
  const std::uint32_t rank_bound = static_cast<std::uint32_t>(basis_count(static_cast<int>(m)));
  std::vector<std::uint32_t> lambdas, kappas;
  std::vector<double> values;
  std::uint32_t current_alpha = 0;
  bool any = false;
  const auto flush_through = [&](std::uint32_t next_alpha) {
    // Emit the pending row, then empty rows up to next_alpha.
    tensor.append_row(std::move(lambdas), std::move(kappas), std::move(values));
    lambdas.clear();
    kappas.clear();
    values.clear();
    for (std::uint32_t a = current_alpha + 1; a < next_alpha; ++a) tensor.append_row({}, {}, {});
  };
  for (std::uint64_t rec = 0; rec < nnz; ++rec) {
    const auto alpha = read_raw<std::uint32_t>(in, "record");
    const auto lambda = read_raw<std::uint32_t>(in, "record");
    const auto kappa = read_raw<std::uint32_t>(in, "record");
    const auto value = read_raw<double>(in, "record");
    if (alpha >= rank_bound || lambda >= rank_bound || kappa >= rank_bound)
      throw CacheError("cache_read: record rank exceeds the header expansion order");
    if (any && alpha < current_alpha)
      throw CacheError("cache_read: records are not sorted by alpha rank");
    if (!any) {
      for (std::uint32_t a = 0; a < alpha; ++a) tensor.append_row({}, {}, {});
    } else if (alpha > current_alpha) {
      flush_through(alpha);
    }
    current_alpha = alpha;
    any = true;
    if (!values.empty() &&
        (lambda < lambdas.back() || (lambda == lambdas.back() && kappa <= kappas.back())))
      throw CacheError("cache_read: records are not sorted by (lambda, kappa)");
    lambdas.push_back(lambda);
    kappas.push_back(kappa);
    values.push_back(value);
  }
  if (any) tensor.append_row(std::move(lambdas), std::move(kappas), std::move(values));
  tensor.finalize_rows();

  // A trailing byte means the header undercounted; a short file was already
  // caught while reading records.
  in.peek();
  if (!in.eof()) throw CacheError("cache_read: trailing data after the declared records");
  return tensor;
}

void ensure_cache_matches(const CollisionTensor& tensor, const KernelSpec& kernel, int band) {
  const KernelSpec& have = tensor.kernel();
  if (have.varpi != kernel.varpi || have.e != kernel.e || have.c_const != kernel.c_const)
    throw CacheError("cached tensor was built for a different kernel (varpi/e/constant mismatch)");
  if (tensor.m() < band)
    throw CacheError("cached tensor order " + std::to_string(tensor.m()) +
                     " is below the requested band " + std::to_string(band));
}

}  // namespace ibex
