#include "tangles/epset.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "tangles/errors.hpp"

namespace tangles {

namespace {

constexpr std::int64_t kModulusCap = 1 << 20;

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  const std::int64_t g = std::gcd(a, b);
  const std::int64_t l = (a / g) * b;
  if (l > kModulusCap) throw UnsupportedError("index-set modulus exceeds cap");
  return l;
}

}  // namespace

EpSet EpSet::all() {
  EpSet s;
  s.residues_ = {true};
  return s;
}

EpSet EpSet::finite_set(const std::vector<std::int64_t>& members) {
  EpSet s;
  for (std::int64_t m : members) {
    if (m < 0) throw DomainError("negative family index");
    s.low_.insert(m);
    s.threshold_ = std::max(s.threshold_, m + 1);
  }
  s.normalize();
  return s;
}

EpSet EpSet::cofinite(const std::vector<std::int64_t>& excluded) {
  return finite_set(excluded).complement();
}

EpSet EpSet::residue_class(std::int64_t modulus, std::int64_t residue) {
  if (modulus < 1 || residue < 0 || residue >= modulus)
    throw DomainError("bad residue class");
  EpSet s;
  s.modulus_ = modulus;
  s.residues_.assign(static_cast<std::size_t>(modulus), false);
  s.residues_[static_cast<std::size_t>(residue)] = true;
  s.normalize();
  return s;
}

EpSet EpSet::at_least(std::int64_t n) {
  EpSet s = all();
  s.threshold_ = std::max<std::int64_t>(n, 0);
  s.normalize();
  return s;
}

bool EpSet::contains(std::int64_t i) const {
  if (i < 0) return false;
  if (i < threshold_) return low_.count(i) > 0;
  return periodic_member(i);
}

bool EpSet::is_infinite() const {
  return std::any_of(residues_.begin(), residues_.end(), [](bool b) { return b; });
}

bool EpSet::is_empty() const { return !is_infinite() && low_.empty(); }

bool EpSet::is_all() const {
  if (static_cast<std::int64_t>(low_.size()) != threshold_) return false;
  return std::all_of(residues_.begin(), residues_.end(), [](bool b) { return b; });
}

std::int64_t EpSet::finite_size() const {
  if (is_infinite()) throw DomainError("finite_size of infinite set");
  return static_cast<std::int64_t>(low_.size());
}

EpSet EpSet::unite(const EpSet& o) const {
  EpSet r;
  r.modulus_ = lcm64(modulus_, o.modulus_);
  r.threshold_ = std::max(threshold_, o.threshold_);
  r.residues_.assign(static_cast<std::size_t>(r.modulus_), false);
  for (std::int64_t i = 0; i < r.modulus_; ++i)
    r.residues_[static_cast<std::size_t>(i)] = periodic_member(i) || o.periodic_member(i);
  for (std::int64_t i = 0; i < r.threshold_; ++i)
    if (contains(i) || o.contains(i)) r.low_.insert(i);
  r.normalize();
  return r;
}

EpSet EpSet::intersect(const EpSet& o) const {
  EpSet r;
  r.modulus_ = lcm64(modulus_, o.modulus_);
  r.threshold_ = std::max(threshold_, o.threshold_);
  r.residues_.assign(static_cast<std::size_t>(r.modulus_), false);
  for (std::int64_t i = 0; i < r.modulus_; ++i)
    r.residues_[static_cast<std::size_t>(i)] = periodic_member(i) && o.periodic_member(i);
  for (std::int64_t i = 0; i < r.threshold_; ++i)
    if (contains(i) && o.contains(i)) r.low_.insert(i);
  r.normalize();
  return r;
}

EpSet EpSet::complement() const {
  EpSet r;
  r.modulus_ = modulus_;
  r.threshold_ = threshold_;
  r.residues_.resize(residues_.size());
  for (std::size_t i = 0; i < residues_.size(); ++i) r.residues_[i] = !residues_[i];
  for (std::int64_t i = 0; i < threshold_; ++i)
    if (!low_.count(i)) r.low_.insert(i);
  r.normalize();
  return r;
}

bool EpSet::operator==(const EpSet& o) const {
  return threshold_ == o.threshold_ && modulus_ == o.modulus_ &&
         residues_ == o.residues_ && low_ == o.low_;
}

std::vector<std::int64_t> EpSet::first(std::size_t n) const {
  std::vector<std::int64_t> out;
  std::int64_t i = 0;
  const std::int64_t hard_stop = threshold_ + modulus_ * static_cast<std::int64_t>(n + 1);
  while (out.size() < n && i <= hard_stop) {
    if (contains(i)) out.push_back(i);
    ++i;
  }
  return out;
}

std::optional<std::int64_t> EpSet::min() const {
  auto f = first(1);
  if (f.empty()) return std::nullopt;
  return f[0];
}

void EpSet::normalize() {
  // Reduce the modulus to the minimal period of the residue mask.
  for (std::int64_t p = 1; p < modulus_; ++p) {
    if (modulus_ % p != 0) continue;
    bool periodic = true;
    for (std::int64_t i = 0; i < modulus_ && periodic; ++i)
      periodic = residues_[static_cast<std::size_t>(i)] ==
                 residues_[static_cast<std::size_t>(i % p)];
    if (periodic) {
      residues_.resize(static_cast<std::size_t>(p));
      modulus_ = p;
      break;
    }
  }
  // Shrink the explicit region while it agrees with the periodic rule.
  while (threshold_ > 0) {
    const std::int64_t i = threshold_ - 1;
    if ((low_.count(i) > 0) != periodic_member(i)) break;
    low_.erase(i);
    --threshold_;
  }
}

std::string EpSet::to_string() const {
  // Members below threshold_ that deviate from the periodic rule.
  std::vector<std::int64_t> plus, minusv;
  for (std::int64_t i = 0; i < threshold_; ++i) {
    const bool expl = low_.count(i) > 0;
    if (expl && !periodic_member(i)) plus.push_back(i);
    if (!expl && periodic_member(i)) minusv.push_back(i);
  }
  std::ostringstream os;
  const bool inf = is_infinite();
  if (!inf) {
    os << '{';
    bool first = true;
    for (std::int64_t i : plus) {
      if (!first) os << ',';
      os << i;
      first = false;
    }
    os << '}';
    return os.str();
  }
  if (is_all()) return "all";
  if (modulus_ == 1) {
    os << "all";
  } else if (modulus_ == 2 && residues_[0] && !residues_[1]) {
    os << "even";
  } else if (modulus_ == 2 && residues_[1] && !residues_[0]) {
    os << "odd";
  } else {
    os << "mod" << modulus_ << '=';
    bool first = true;
    for (std::int64_t r = 0; r < modulus_; ++r) {
      if (!residues_[static_cast<std::size_t>(r)]) continue;
      if (!first) os << '|';
      os << r;
      first = false;
    }
  }
  auto emit = [&os](char sign, const std::vector<std::int64_t>& v) {
    if (v.empty()) return;
    os << sign << '{';
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) os << ',';
      os << v[i];
    }
    os << '}';
  };
  emit('-', minusv);
  emit('+', plus);
  return os.str();
}

namespace {

std::optional<std::vector<std::int64_t>> parse_int_list(const std::string& s) {
  // "{a,b,c}" or "{}"
  if (s.size() < 2 || s.front() != '{' || s.back() != '}') return std::nullopt;
  std::vector<std::int64_t> out;
  std::string body = s.substr(1, s.size() - 2);
  if (body.empty()) return out;
  std::istringstream is(body);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    try {
      std::size_t pos = 0;
      const std::int64_t v = std::stoll(tok, &pos);
      if (pos != tok.size() || v < 0) return std::nullopt;
      out.push_back(v);
    } catch (...) {
      return std::nullopt;
    }
  }
  return out;
}

}  // namespace

std::optional<EpSet> EpSet::parse(const std::string& text) {
  if (text.empty()) return std::nullopt;
  // Split off "+{...}" / "-{...}" adjustment suffixes.
  std::string base = text;
  std::vector<std::pair<char, std::string>> suffixes;
  while (true) {
    const std::size_t cut = base.find_last_of("+-");
    if (cut == std::string::npos || cut == 0) break;
    if (base[cut - 1] == 'd' || std::isdigit(static_cast<unsigned char>(base[cut - 1])) ||
        base[cut - 1] == '}' || base[cut - 1] == 'n' || base[cut - 1] == 'l') {
      // candidate suffix must look like {...}
      if (base.back() != '}') break;
      const std::string tail = base.substr(cut + 1);
      if (tail.empty() || tail.front() != '{') break;
      suffixes.emplace_back(base[cut], tail);
      base = base.substr(0, cut);
      continue;
    }
    break;
  }
  std::reverse(suffixes.begin(), suffixes.end());

  EpSet s;
  if (base == "all") {
    s = all();
  } else if (base == "none") {
    s = none();
  } else if (base == "even" || base == "evens") {
    s = evens();
  } else if (base == "odd" || base == "odds") {
    s = odds();
  } else if (base.rfind("mod", 0) == 0) {
    const std::size_t eq = base.find('=');
    if (eq == std::string::npos) return std::nullopt;
    std::int64_t m = 0;
    try {
      std::size_t pos = 0;
      m = std::stoll(base.substr(3, eq - 3), &pos);
      if (pos != eq - 3) return std::nullopt;
    } catch (...) {
      return std::nullopt;
    }
    if (m < 1 || m > kModulusCap) return std::nullopt;
    s = none();
    std::istringstream is(base.substr(eq + 1));
    std::string tok;
    while (std::getline(is, tok, '|')) {
      try {
        std::size_t pos = 0;
        const std::int64_t r = std::stoll(tok, &pos);
        if (pos != tok.size() || r < 0 || r >= m) return std::nullopt;
        s = s.unite(residue_class(m, r));
      } catch (...) {
        return std::nullopt;
      }
    }
  } else if (base.front() == '{') {
    auto lst = parse_int_list(base);
    if (!lst) return std::nullopt;
    s = finite_set(*lst);
  } else {
    return std::nullopt;
  }
  for (const auto& [sign, body] : suffixes) {
    auto lst = parse_int_list(body);
    if (!lst) return std::nullopt;
    if (sign == '+')
      s = s.unite(finite_set(*lst));
    else
      s = s.minus(finite_set(*lst));
  }
  return s;
}

}  // namespace tangles
