#include "afftree/epseq.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include "afftree/error.hpp"
#include "afftree/lasso.hpp"

namespace afftree {

std::size_t lcm_size(std::size_t a, std::size_t b) { return a / std::gcd(a, b) * b; }

EpSeq::EpSeq(int modulus, std::vector<int> preperiod, std::vector<int> period)
    : d_(modulus), pre_(std::move(preperiod)), per_(std::move(period)) {
  check_modulus(d_);
  for (int& v : pre_) v = reduce_mod(v, d_);
  for (int& v : per_) v = reduce_mod(v, d_);
  canonicalize_lasso(pre_, per_);
}

EpSeq EpSeq::basis(int modulus, std::size_t i) {
  if (i == 0) throw Error("basis vectors are indexed from 1");
  std::vector<int> pre(i, 0);
  pre[i - 1] = 1;
  return EpSeq(modulus, std::move(pre), {0});
}

int EpSeq::at(std::size_t i) const { return lasso_at(pre_, per_, i); }

std::vector<int> EpSeq::prefix(std::size_t n) const {
  std::vector<int> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = at(i + 1);
  return out;
}

EpSeq EpSeq::shift(std::size_t k) const {
  EpSeq s = *this;
  shift_lasso(s.pre_, s.per_, k);
  return s;
}

EpSeq EpSeq::delayed(std::size_t k) const {
  std::vector<int> pre(k, 0);
  pre.insert(pre.end(), pre_.begin(), pre_.end());
  return EpSeq(d_, std::move(pre), per_);
}

EpSeq EpSeq::scaled(int factor) const {
  EpSeq s = *this;
  for (int& v : s.pre_) v = reduce_mod(static_cast<long long>(v) * factor, d_);
  for (int& v : s.per_) v = reduce_mod(static_cast<long long>(v) * factor, d_);
  canonicalize_lasso(s.pre_, s.per_);
  return s;
}

EpSeq operator+(const EpSeq& a, const EpSeq& b) {
  if (a.d_ != b.d_) throw ModulusMismatch(a.d_, b.d_);
  const std::size_t m = std::max(a.pre_.size(), b.pre_.size());
  const std::size_t p = lcm_size(a.per_.size(), b.per_.size());
  std::vector<int> pre(m), per(p);
  for (std::size_t i = 0; i < m; ++i) pre[i] = a.at(i + 1) + b.at(i + 1);
  for (std::size_t i = 0; i < p; ++i) per[i] = a.at(m + i + 1) + b.at(m + i + 1);
  return EpSeq(a.d_, std::move(pre), std::move(per));
}

EpSeq operator-(const EpSeq& a, const EpSeq& b) { return a + (-b); }

namespace {

void render_list(std::ostringstream& os, const std::vector<int>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
}

std::vector<int> parse_list(std::string_view text, int d, int column) {
  std::vector<int> out;
  if (text.empty()) return out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    const std::string_view item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (ec != std::errc{} || ptr != item.data() + item.size() || item.empty())
      throw ParseError("bad sequence entry '" + std::string(item) + "'", 1, column + static_cast<int>(pos));
    if (value < 0 || value >= d)
      throw ParseError("entry " + std::to_string(value) + " out of range for Z_" + std::to_string(d), 1, column + static_cast<int>(pos));
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

std::string EpSeq::to_string() const {
  std::ostringstream os;
  os << "pre:";
  render_list(os, pre_);
  os << "|per:";
  render_list(os, per_);
  return os.str();
}

EpSeq EpSeq::parse(std::string_view text, int modulus) {
  check_modulus(modulus);
  constexpr std::string_view kPre = "pre:";
  constexpr std::string_view kPer = "per:";
  const std::size_t bar = text.find('|');
  if (text.substr(0, kPre.size()) != kPre || bar == std::string_view::npos ||
      text.substr(bar + 1, kPer.size()) != kPer)
    throw ParseError("expected 'pre:...|per:...'", 1, 1);
  const auto pre = parse_list(text.substr(kPre.size(), bar - kPre.size()), modulus, static_cast<int>(kPre.size()) + 1);
  const auto per = parse_list(text.substr(bar + 1 + kPer.size()), modulus, static_cast<int>(bar + 1 + kPer.size()) + 1);
  if (per.empty()) throw ParseError("period must be nonempty", 1, static_cast<int>(bar + 1 + kPer.size()) + 1);
  return EpSeq(modulus, pre, per);
}

}  // namespace afftree
