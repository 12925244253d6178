#include "cssaut/permutation.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

#include "cssaut/errors.hpp"

namespace cssaut {

Permutation::Permutation(std::vector<std::uint32_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (auto x : images_) {
    if (x >= images_.size() || seen[x]) throw InvalidArgument("images do not form a permutation");
    seen[x] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  Permutation p;
  p.images_.resize(n);
  std::iota(p.images_.begin(), p.images_.end(), 0U);
  return p;
}

Permutation Permutation::rotation(std::size_t n, std::size_t shift) {
  Permutation p;
  p.images_.resize(n);
  for (std::size_t i = 0; i < n; ++i) p.images_[i] = static_cast<std::uint32_t>((i + shift) % n);
  return p;
}

Permutation Permutation::transposition(std::size_t n, std::size_t a, std::size_t b) {
  if (a >= n || b >= n) throw InvalidArgument("transposition point out of range");
  Permutation p = identity(n);
  std::swap(p.images_[a], p.images_[b]);
  return p;
}

Permutation Permutation::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::uint32_t> images;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    unsigned long value = 0;
    try {
      value = std::stoul(token, &used);
    } catch (const std::exception&) {
      throw ParseError("bad permutation entry '" + token + "'");
    }
    if (used != token.size() || value == 0) throw ParseError("bad permutation entry '" + token + "'");
    images.push_back(static_cast<std::uint32_t>(value - 1));
  }
  if (images.empty()) throw ParseError("empty permutation");
  try {
    return Permutation(std::move(images));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

Permutation Permutation::inverse() const {
  Permutation p;
  p.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) p.images_[images_[i]] = static_cast<std::uint32_t>(i);
  return p;
}

std::uint64_t Permutation::order() const {
  std::vector<bool> seen(images_.size(), false);
  std::uint64_t result = 1;
  for (std::size_t s = 0; s < images_.size(); ++s) {
    if (seen[s]) continue;
    std::uint64_t len = 0;
    for (std::size_t x = s; !seen[x]; x = images_[x]) {
      seen[x] = true;
      ++len;
    }
    result = std::lcm(result, len);
  }
  return result;
}

std::string Permutation::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(images_[i] + 1);
  }
  return s;
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::size_t h = p.degree();
  for (auto x : p.images()) h = h * 1000003U + x;
  return h;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) throw DimensionError("composing permutations of different degree");
  std::vector<std::uint32_t> images(p.degree());
  for (std::size_t i = 0; i < images.size(); ++i) images[i] = p[q[i]];
  return Permutation(std::move(images));
}

BitVector apply_perm(const BitVector& v, const Permutation& p) {
  if (v.size() != p.degree()) throw DimensionError("permutation degree does not match vector length");
  BitVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v.get(p[i])) out.set(i);
  }
  return out;
}

BitMatrix apply_perm(const BitMatrix& m, const Permutation& p) {
  std::vector<BitVector> rows;
  rows.reserve(m.rows());
  for (const auto& r : m.row_vectors()) rows.push_back(apply_perm(r, p));
  return BitMatrix(std::move(rows), m.cols());
}

Permutation read_permutation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open permutation file '" + path + "'");
  std::string line, body;
  while (std::getline(in, line)) {
    if (!line.empty() && line.front() == '#') continue;
    body += line + ' ';
  }
  return Permutation::parse(body);
}

}  // namespace cssaut
