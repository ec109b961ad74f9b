#include "ergm/graph.hpp"

#include <cmath>
#include <fstream>
#include <iterator>

namespace ergm {

EdgeId edge_from_index(std::uint64_t index) noexcept {
  // v is the largest value with v(v-1)/2 <= index.
  auto v = static_cast<std::uint64_t>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(index))) / 2.0);
  while (v * (v - 1) / 2 > index) --v;
  while ((v + 1) * v / 2 <= index) ++v;
  const std::uint64_t u = index - v * (v - 1) / 2;
  return {static_cast<Vertex>(u), static_cast<Vertex>(v)};
}

EdgeId make_edge(Vertex a, Vertex b) {
  if (a == b) throw std::invalid_argument("edge endpoints must differ");
  return a < b ? EdgeId{a, b} : EdgeId{b, a};
}

Graph::Graph(std::size_t n) : n_(n), words_((n + 63) / 64) {
  if (n == 0) throw std::invalid_argument("graph needs at least one vertex");
  if (n > kMaxVertices) throw std::invalid_argument("graph exceeds 65536 vertices");
  rows_.assign(n_ * words_, 0);
  tri_.assign((ergm::num_pairs(n_) + 63) / 64, 0);
  degrees_.assign(n_, 0);
}

void Graph::flip(EdgeId e) noexcept {
  const std::uint64_t bu = std::uint64_t{1} << (e.v & 63);
  const std::uint64_t bv = std::uint64_t{1} << (e.u & 63);
  std::uint64_t& wu = rows_[e.u * words_ + (e.v >> 6)];
  const bool was = wu & bu;
  wu ^= bu;
  rows_[e.v * words_ + (e.u >> 6)] ^= bv;
  const std::uint64_t i = edge_index(e);
  tri_[i >> 6] ^= std::uint64_t{1} << (i & 63);
  if (was) {
    --m_;
    --degrees_[e.u];
    --degrees_[e.v];
  } else {
    ++m_;
    ++degrees_[e.u];
    ++degrees_[e.v];
  }
}

Graph Graph::complete(std::size_t n) {
  Graph g(n);
  for (Vertex v = 1; v < n; ++v)
    for (Vertex u = 0; u < v; ++u) g.flip({u, v});
  return g;
}

Graph sample_gnp(std::size_t n, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability must lie in [0,1]");
  Graph g(n);
  const std::uint64_t pairs = g.num_pairs();
  for (std::uint64_t i = 0; i < pairs; ++i)
    if (rng.uniform() < p) g.flip(edge_from_index(i));
  return g;
}

bool dominates(const Graph& x, const Graph& y) {
  if (x.num_vertices() != y.num_vertices()) throw std::invalid_argument("dominates: vertex counts differ");
  const auto a = x.edge_bits();
  const auto b = y.edge_bits();
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] & ~b[k]) return false;
  return true;
}

std::uint64_t hamming_distance(const Graph& a, const Graph& b) {
  if (a.num_vertices() != b.num_vertices()) throw std::invalid_argument("hamming_distance: vertex counts differ");
  const auto x = a.edge_bits();
  const auto y = b.edge_bits();
  std::uint64_t d = 0;
  for (std::size_t k = 0; k < x.size(); ++k) d += std::popcount(x[k] ^ y[k]);
  return d;
}

namespace {
constexpr std::uint8_t kMagic[4] = {'E', 'R', 'G', 'X'};
constexpr std::uint8_t kVersion = 1;
constexpr std::size_t kHeader = 9;
}  // namespace

std::vector<std::uint8_t> snapshot_write(const Graph& x) {
  const std::uint64_t pairs = x.num_pairs();
  const std::size_t payload = (pairs + 7) / 8;
  std::vector<std::uint8_t> out(kHeader + payload, 0);
  std::copy(std::begin(kMagic), std::end(kMagic), out.begin());
  out[4] = kVersion;
  const auto n = static_cast<std::uint32_t>(x.num_vertices());
  for (int b = 0; b < 4; ++b) out[5 + b] = static_cast<std::uint8_t>(n >> (8 * b));
  const auto bits = x.edge_bits();
  for (std::size_t i = 0; i < payload; ++i)
    out[kHeader + i] = static_cast<std::uint8_t>(bits[i / 8] >> (8 * (i % 8)));
  return out;
}

Graph snapshot_read(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeader) throw SnapshotError("snapshot: truncated header");
  if (!std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin()))
    throw SnapshotError("snapshot: bad magic");
  if (bytes[4] != kVersion) throw SnapshotError("snapshot: unsupported version " + std::to_string(bytes[4]));
  std::uint32_t n = 0;
  for (int b = 0; b < 4; ++b) n |= static_cast<std::uint32_t>(bytes[5 + b]) << (8 * b);
  if (n == 0 || n > kMaxVertices) throw SnapshotError("snapshot: vertex count out of range");
  const std::uint64_t pairs = num_pairs(n);
  const std::size_t payload = (pairs + 7) / 8;
  if (bytes.size() < kHeader + payload) throw SnapshotError("snapshot: truncated payload");
  if (bytes.size() > kHeader + payload) throw SnapshotError("snapshot: trailing bytes after payload");
  if (pairs % 8 != 0) {
    const std::uint8_t last = bytes[kHeader + payload - 1];
    if (last >> (pairs % 8)) throw SnapshotError("snapshot: nonzero padding bits");
  }
  Graph g(n);
  for (std::uint64_t i = 0; i < pairs; ++i)
    if ((bytes[kHeader + i / 8] >> (i % 8)) & 1u) g.flip(edge_from_index(i));
  return g;
}

void snapshot_save(const Graph& x, const std::string& path) {
  const auto bytes = snapshot_write(x);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

Graph snapshot_load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return snapshot_read(bytes);
}

}  // namespace ergm
