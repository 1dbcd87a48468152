#pragma once

// Brute-force semantic oracle: exhaustive truth-table comparison.
//
// Valuations are enumerated over the union of both formulas' atoms in
// first-occurrence order. Atom i is bit i of a counter that runs from
// 2^n - 1 down to 0, so the all-true row comes first and counterexamples are
// deterministic. Internally a whole truth table is evaluated at once, 64 rows
// per machine word.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cnfkit/errors.hpp"
#include "cnfkit/formula.hpp"

namespace cnf {

namespace detail {

// Appends atoms of `phi` not yet in `out`, left to right. The views point into
// the formula's nodes.
template <bool I>
void collect_atoms(const BasicFormula<I>& phi, std::vector<std::string_view>& out) {
  thread_local std::vector<const BasicFormula<I>*> pending;
  pending.clear();
  pending.push_back(&phi);
  while (!pending.empty()) {
    const BasicFormula<I>* f = pending.back();
    pending.pop_back();
    switch (f->kind()) {
      case Connective::Var:
        if (std::find(out.begin(), out.end(), f->name()) == out.end()) out.push_back(f->name());
        break;
      case Connective::Const:
        break;
      case Connective::Neg:
        pending.push_back(&f->operand());
        break;
      default:
        pending.push_back(&f->rhs());
        pending.push_back(&f->lhs());
        break;
    }
  }
}

inline std::size_t table_words(std::size_t atoms) { return atoms <= 6 ? 1 : std::size_t{1} << (atoms - 6); }

// Word w of atom i's column: bit r is set iff bit i of row index 64 * w + r is.
inline std::uint64_t projection(std::size_t i, std::size_t w) {
  static constexpr std::uint64_t low[6] = {0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull,
                                           0xF0F0F0F0F0F0F0F0ull, 0xFF00FF00FF00FF00ull,
                                           0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull};
  if (i < 6) return low[i];
  return ((w >> (i - 6)) & 1u) ? ~std::uint64_t{0} : 0;
}

/// Truth table of `phi` over `atoms` into `values`, 64 rows per word, unused
/// high rows cleared. Evaluated bottom-up with explicit stacks.
template <bool I>
void truth_table(const BasicFormula<I>& phi, const std::vector<std::string_view>& atoms,
                 std::vector<std::uint64_t>& values) {
  const std::size_t n = table_words(atoms.size());
  struct Item {
    const BasicFormula<I>* f;
    bool expanded;
  };
  thread_local std::vector<Item> work;
  work.clear();
  values.clear();
  work.push_back({&phi, false});
  while (!work.empty()) {
    const Item item = work.back();
    work.pop_back();
    const BasicFormula<I>& f = *item.f;
    switch (f.kind()) {
      case Connective::Var: {
        const auto i = static_cast<std::size_t>(std::find(atoms.begin(), atoms.end(), f.name()) - atoms.begin());
        for (std::size_t w = 0; w < n; ++w) values.push_back(projection(i, w));
        continue;
      }
      case Connective::Const:
        values.insert(values.end(), n, f.value() ? ~std::uint64_t{0} : 0);
        continue;
      case Connective::Neg:
        if (!item.expanded) {
          work.push_back({item.f, true});
          work.push_back({&f.operand(), false});
        } else {
          for (std::size_t w = values.size() - n; w < values.size(); ++w) values[w] = ~values[w];
        }
        continue;
      default:
        break;
    }
    if (!item.expanded) {
      work.push_back({item.f, true});
      work.push_back({&f.rhs(), false});
      work.push_back({&f.lhs(), false});
      continue;
    }
    const std::size_t r = values.size() - n;
    const std::size_t l = r - n;
    for (std::size_t w = 0; w < n; ++w) {
      switch (f.kind()) {
        case Connective::And: values[l + w] &= values[r + w]; break;
        case Connective::Or: values[l + w] |= values[r + w]; break;
        default: values[l + w] = ~values[l + w] | values[r + w]; break;
      }
    }
    values.resize(r);
  }
  if (atoms.size() < 6) values[0] &= (std::uint64_t{1} << (std::size_t{1} << atoms.size())) - 1;
}

// Atom names are short, so an inline loop beats a library call.
inline bool same_name(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

inline std::size_t atom_index(const std::vector<std::string_view>& atoms, std::string_view name) {
  std::size_t i = 0;
  while (i < atoms.size() && !same_name(atoms[i], name)) ++i;
  return i;
}

// Single-word truth table of `phi`, registering unseen atoms in `atoms` as
// they are met left to right. Gives up (returns false) on a seventh atom.
template <bool I>
bool small_truth_table(const BasicFormula<I>& phi, std::vector<std::string_view>& atoms, std::uint64_t& out) {
  struct Item {
    const BasicFormula<I>* f;
    bool right;
  };
  thread_local std::vector<Item> work_buffer;
  thread_local std::vector<std::uint64_t> value_buffer;
  auto& work = work_buffer;
  auto& values = value_buffer;
  work.clear();
  values.clear();

  const BasicFormula<I>* f = &phi;
  for (;;) {
    for (bool leaf = false; !leaf;) {
      switch (f->kind()) {
        case Connective::Var: {
          const std::size_t i = atom_index(atoms, f->name());
          if (i == atoms.size()) {
            if (i == 6) return false;
            atoms.push_back(f->name());
          }
          values.push_back(projection(i, 0));
          leaf = true;
          break;
        }
        case Connective::Const:
          values.push_back(f->value() ? ~std::uint64_t{0} : 0);
          leaf = true;
          break;
        case Connective::Neg:
          work.push_back({f, true});
          f = &f->operand();
          break;
        default:
          work.push_back({f, false});
          f = &f->lhs();
          break;
      }
    }
    for (;;) {
      if (work.empty()) {
        out = values.back();
        return true;
      }
      Item& top = work.back();
      if (!top.right) {
        top.right = true;
        f = &top.f->rhs();
        break;
      }
      const Connective c = top.f->kind();
      work.pop_back();
      if (c == Connective::Neg) {
        values.back() = ~values.back();
        continue;
      }
      const std::uint64_t r = values.back();
      values.pop_back();
      std::uint64_t& l = values.back();
      if (c == Connective::And) {
        l &= r;
      } else if (c == Connective::Or) {
        l |= r;
      } else {
        l = ~l | r;
      }
    }
  }
}

/// Highest row index on which the tables differ, if any.
inline std::optional<std::uint64_t> last_difference(const std::vector<std::uint64_t>& a,
                                                    const std::vector<std::uint64_t>& b) {
  for (std::size_t w = a.size(); w-- > 0;) {
    const std::uint64_t diff = a[w] ^ b[w];
    if (diff != 0) return w * 64 + (63 - static_cast<std::uint64_t>(std::countl_zero(diff)));
  }
  return std::nullopt;
}

}  // namespace detail

/// Distinct atoms in order of first occurrence (left to right).
template <bool I>
std::vector<std::string> atoms(const BasicFormula<I>& phi) {
  std::vector<std::string_view> found;
  detail::collect_atoms(phi, found);
  return {found.begin(), found.end()};
}

struct Equivalence {
  /// First valuation, in enumeration order, on which the two formulas differ.
  std::optional<Valuation> counterexample;

  bool equivalent() const noexcept { return !counterexample.has_value(); }
  explicit operator bool() const noexcept { return equivalent(); }
};

inline constexpr std::size_t kDefaultMaxAtoms = 20;

/// Exhaustive truth-table equivalence. Throws TooManyAtoms when the combined
/// atom count exceeds `max_atoms`.
template <bool A, bool B>
Equivalence equivalent(const BasicFormula<A>& phi, const BasicFormula<B>& psi,
                       std::size_t max_atoms = kDefaultMaxAtoms) {
  thread_local std::vector<std::string_view> var_buffer;
  thread_local std::vector<std::uint64_t> lhs_buffer, rhs_buffer;
  auto& vars = var_buffer;
  auto& lhs = lhs_buffer;
  auto& rhs = rhs_buffer;
  vars.clear();

  std::optional<std::uint64_t> row;
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  if (max_atoms >= 6 && detail::small_truth_table(phi, vars, a) && detail::small_truth_table(psi, vars, b)) {
    if (vars.size() < 6) {
      const std::uint64_t used = (std::uint64_t{1} << (std::size_t{1} << vars.size())) - 1;
      a &= used;
      b &= used;
    }
    if (a != b) row = 63 - static_cast<std::uint64_t>(std::countl_zero(a ^ b));
  } else {
    vars.clear();
    detail::collect_atoms(phi, vars);
    detail::collect_atoms(psi, vars);
    if (vars.size() > max_atoms) throw TooManyAtoms(vars.size(), max_atoms);
    detail::truth_table(phi, vars, lhs);
    detail::truth_table(psi, vars, rhs);
    row = detail::last_difference(lhs, rhs);
  }
  if (!row) return {};

  Valuation v;
  for (std::size_t i = 0; i < vars.size(); ++i) v.set(std::string(vars[i]), ((*row >> i) & 1u) != 0);
  return {std::move(v)};
}

/// `name=value` pairs in atom order, space separated.
inline std::string format_valuation(const Valuation& v, const std::vector<std::string>& order) {
  std::string out;
  for (const std::string& atom : order) {
    if (!out.empty()) out += ' ';
    out += atom + (v(atom) ? "=true" : "=false");
  }
  return out;
}

}  // namespace cnf
