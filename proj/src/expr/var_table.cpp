#include "presym/expr/var_table.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "presym/error.hpp"

namespace presym {

namespace {

bool valid_identifier(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name.front()))) return false;
  return std::all_of(name.begin(), name.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; });
}

// Splits "q12" into ("q", 12). Returns nullopt when the suffix is not a
// positive decimal integer without leading zeros.
std::optional<std::pair<std::string_view, std::uint32_t>> split_indexed(std::string_view name) {
  auto digits = std::find_if(name.begin(), name.end(),
                             [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  if (digits == name.begin() || digits == name.end() || *digits == '0') return std::nullopt;
  std::uint32_t index = 0;
  auto offset = static_cast<std::size_t>(digits - name.begin());
  auto [ptr, ec] = std::from_chars(name.data() + offset, name.data() + name.size(), index);
  if (ec != std::errc() || ptr != name.data() + name.size()) return std::nullopt;
  return std::pair{name.substr(0, offset), index};
}

}  // namespace

VarTable::VarTable(std::size_t n) : n_(n) {
  if (n == 0) throw InputError("configuration dimension must be positive");
}

VarTable VarTable::chart(const std::vector<std::string>& names) {
  VarTable table;
  for (const auto& name : names) table = table.with_parameter(name);
  return table;
}

VarTable VarTable::with_momenta() const {
  VarTable out = *this;
  out.has_momenta_ = n_ > 0;
  return out;
}

VarTable VarTable::with_multipliers(std::size_t count) const {
  VarTable out = *this;
  out.multipliers_ = std::max(multipliers_, count);
  return out;
}

VarTable VarTable::with_parameter(const std::string& name) const {
  if (!valid_identifier(name)) throw InputError("invalid variable name '" + name + "'");
  if (lookup(name)) throw InputError("duplicate variable name '" + name + "'");
  if (n_ > 0) {
    if (auto split = split_indexed(name)) {
      auto stem = split->first;
      if (stem == "q" || stem == "v" || stem == "p" || stem == "lam") {
        throw InputError("variable name '" + name + "' is reserved");
      }
    }
  }
  VarTable out = *this;
  out.parameters_.push_back(name);
  return out;
}

std::optional<Var> VarTable::lookup(std::string_view name) const {
  for (std::size_t i = 0; i < parameters_.size(); ++i) {
    if (parameters_[i] == name) return Var{VarKind::parameter, static_cast<std::uint32_t>(i + 1)};
  }
  auto split = split_indexed(name);
  if (!split) return std::nullopt;
  auto [stem, index] = *split;
  std::optional<Var> var;
  if (stem == "q") var = Var{VarKind::position, index};
  if (stem == "v") var = Var{VarKind::velocity, index};
  if (stem == "p") var = Var{VarKind::momentum, index};
  if (stem == "lam") var = Var{VarKind::multiplier, index};
  if (var && contains(*var)) return var;
  return std::nullopt;
}

bool VarTable::contains(Var var) const {
  if (var.index == 0) return false;
  switch (var.kind) {
    case VarKind::position:
    case VarKind::velocity:
      return var.index <= n_;
    case VarKind::momentum:
      return has_momenta_ && var.index <= n_;
    case VarKind::multiplier:
      return var.index <= multipliers_;
    case VarKind::parameter:
      return var.index <= parameters_.size();
  }
  return false;
}

std::string VarTable::name(Var var) const {
  const auto idx = std::to_string(var.index);
  switch (var.kind) {
    case VarKind::position:
      return "q" + idx;
    case VarKind::velocity:
      return "v" + idx;
    case VarKind::momentum:
      return "p" + idx;
    case VarKind::multiplier:
      return "lam" + idx;
    case VarKind::parameter:
      if (var.index >= 1 && var.index <= parameters_.size()) return parameters_[var.index - 1];
      return "t" + idx;
  }
  return "?";
}

namespace {

std::vector<Var> run(VarKind kind, std::size_t count) {
  std::vector<Var> out;
  out.reserve(count);
  for (std::size_t i = 1; i <= count; ++i) out.push_back({kind, static_cast<std::uint32_t>(i)});
  return out;
}

}  // namespace

std::vector<Var> VarTable::positions() const { return run(VarKind::position, n_); }
std::vector<Var> VarTable::velocities() const { return run(VarKind::velocity, n_); }
std::vector<Var> VarTable::momenta() const {
  return run(VarKind::momentum, has_momenta_ ? n_ : 0);
}
std::vector<Var> VarTable::multipliers() const { return run(VarKind::multiplier, multipliers_); }
std::vector<Var> VarTable::parameters() const {
  return run(VarKind::parameter, parameters_.size());
}

std::vector<Var> VarTable::variables() const {
  std::vector<Var> out;
  for (auto part : {positions(), velocities(), momenta(), multipliers(), parameters()}) {
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace presym
