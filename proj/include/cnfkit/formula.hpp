#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <new>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cnf {

enum class Connective : std::uint8_t { Var, Const, And, Or, Impl, Neg };

/// True iff `name` matches `[A-Za-z_][A-Za-z0-9_]*` and is not `true`/`false`.
inline bool is_valid_ident(std::string_view name) noexcept {
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (name.empty() || !alpha(name.front())) return false;
  for (char c : name) {
    if (!alpha(c) && !digit(c)) return false;
  }
  return name != "true" && name != "false";
}

namespace detail {

// Per-thread free list of fixed-size blocks. Formula conversion allocates and
// drops many small nodes in bursts; recycling them avoids most malloc traffic.
// Blocks freed on another thread simply join that thread's list.
template <std::size_t Size>
class BlockPool {
  struct Block {
    Block* next;
  };
  struct State {
    Block* head;
    std::size_t cached;
    bool open;
    bool closed;
  };
  static constexpr std::size_t kMaxCached = std::size_t{1} << 16;

  // Trivially destructible, so it stays usable while other thread-local or
  // static objects are torn down.
  static State& state() noexcept {
    thread_local State s{nullptr, 0, false, false};
    return s;
  }

  struct Drain {
    ~Drain() {
      State& s = state();
      while (s.head) {
        Block* next = s.head->next;
        ::operator delete(s.head);
        s.head = next;
      }
      s.cached = 0;
      s.closed = true;
    }
  };

 public:
  static constexpr std::size_t block_size = Size < sizeof(Block) ? sizeof(Block) : Size;

  static void* get() {
    State& s = state();
    if (s.head) {
      Block* b = s.head;
      s.head = b->next;
      --s.cached;
      return b;
    }
    if (!s.open && !s.closed) {
      thread_local Drain drain;
      (void)drain;
      s.open = true;
    }
    return ::operator new(block_size);
  }

  static void put(void* p) noexcept {
    State& s = state();
    if (!s.open || s.closed || s.cached >= kMaxCached) {
      ::operator delete(p);
      return;
    }
    s.head = new (p) Block{s.head};
    ++s.cached;
  }
};

template <class T>
struct PoolAllocator {
  using value_type = T;

  PoolAllocator() = default;
  template <class U>
  PoolAllocator(const PoolAllocator<U>&) noexcept {}

  T* allocate(std::size_t n) {
    if (n != 1) return static_cast<T*>(::operator new(n * sizeof(T)));
    return static_cast<T*>(BlockPool<sizeof(T)>::get());
  }

  void deallocate(T* p, std::size_t n) noexcept {
    if (n != 1) {
      ::operator delete(p);
      return;
    }
    BlockPool<sizeof(T)>::put(p);
  }

  template <class U>
  friend bool operator==(const PoolAllocator&, const PoolAllocator<U>&) noexcept {
    return true;
  }
};

}  // namespace detail

/**
 * Immutable propositional formula tree.
 *
 * `BasicFormula<true>` is the full language with implication; `BasicFormula<false>`
 * is the implication-free fragment, for which the `Impl` factory does not exist.
 * Values are cheap to copy (subtrees are shared) and compare structurally.
 * Destruction and equality are iterative, so arbitrarily deep trees are safe to
 * drop and compare.
 */
template <bool WithImplication>
class BasicFormula {
  struct Node;
  template <bool>
  friend class BasicFormula;

 public:
  static constexpr bool has_implication = WithImplication;

  static BasicFormula Var(std::string name) {
    if (!is_valid_ident(name)) throw std::invalid_argument("invalid identifier '" + name + "'");
    auto node = make_node(Connective::Var);
    node->name = std::move(name);
    return BasicFormula(std::move(node));
  }

  /// Var with the same identifier as `atom`, a Var of either representation.
  template <bool J>
  static BasicFormula Var(const BasicFormula<J>& atom) {
    if (!atom.is(Connective::Var)) throw std::invalid_argument("not a variable");
    auto node = make_node(Connective::Var);
    node->name = atom.name();
    return BasicFormula(std::move(node));
  }

  static BasicFormula Const(bool value) {
    auto node = make_node(Connective::Const);
    node->value = value;
    return BasicFormula(std::move(node));
  }

  static BasicFormula And(BasicFormula lhs, BasicFormula rhs) {
    return binary(Connective::And, std::move(lhs), std::move(rhs));
  }

  static BasicFormula Or(BasicFormula lhs, BasicFormula rhs) {
    return binary(Connective::Or, std::move(lhs), std::move(rhs));
  }

  static BasicFormula Impl(BasicFormula lhs, BasicFormula rhs)
    requires WithImplication
  {
    return binary(Connective::Impl, std::move(lhs), std::move(rhs));
  }

  static BasicFormula Neg(BasicFormula operand) {
    auto node = make_node(Connective::Neg);
    node->lhs = std::move(operand);
    return BasicFormula(std::move(node));
  }

  Connective kind() const noexcept { return node_->kind; }
  bool is(Connective c) const noexcept { return node_->kind == c; }
  bool is_binary() const noexcept {
    return is(Connective::And) || is(Connective::Or) || is(Connective::Impl);
  }

  /// Identifier of a `Var`.
  const std::string& name() const { return node_->name; }
  /// Payload of a `Const`.
  bool value() const { return node_->value; }
  /// Left operand of a binary node.
  const BasicFormula& lhs() const { return node_->lhs; }
  /// Right operand of a binary node.
  const BasicFormula& rhs() const { return node_->rhs; }
  /// Operand of a `Neg`.
  const BasicFormula& operand() const { return node_->lhs; }

  /// Same underlying node (not merely structurally equal).
  bool shares_node_with(const BasicFormula& other) const noexcept { return node_ == other.node_; }

  friend bool operator==(const BasicFormula& a, const BasicFormula& b) {
    return equal_nodes(a.node_.get(), b.node_.get(), 0);
  }

 private:
  BasicFormula() = default;
  explicit BasicFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static bool same_payload(const Node* x, const Node* y) {
    if (x->kind != y->kind) return false;
    if (x->kind == Connective::Var) return x->name == y->name;
    return x->kind != Connective::Const || x->value == y->value;
  }

  // Recursive comparison up to a fixed nesting, explicit stack beyond it.
  static bool equal_nodes(const Node* x, const Node* y, std::size_t nesting) {
    while (x != y) {
      if (!same_payload(x, y)) return false;
      if (x->kind == Connective::Var || x->kind == Connective::Const) return true;
      if (nesting >= kRecursiveCompareLimit) return equal_deep(x, y);
      if (x->kind != Connective::Neg && !equal_nodes(x->lhs.node_.get(), y->lhs.node_.get(), nesting + 1))
        return false;
      const bool neg = x->kind == Connective::Neg;
      x = (neg ? x->lhs : x->rhs).node_.get();
      y = (neg ? y->lhs : y->rhs).node_.get();
    }
    return true;
  }

  static bool equal_deep(const Node* a, const Node* b) {
    std::vector<std::pair<const Node*, const Node*>> pending{{a, b}};
    while (!pending.empty()) {
      auto [x, y] = pending.back();
      pending.pop_back();
      if (x == y) continue;
      if (!same_payload(x, y)) return false;
      switch (x->kind) {
        case Connective::Var:
        case Connective::Const:
          break;
        case Connective::Neg:
          pending.emplace_back(x->lhs.node_.get(), y->lhs.node_.get());
          break;
        default:
          pending.emplace_back(x->rhs.node_.get(), y->rhs.node_.get());
          pending.emplace_back(x->lhs.node_.get(), y->lhs.node_.get());
          break;
      }
    }
    return true;
  }

  static constexpr std::size_t kRecursiveCompareLimit = 512;

  static std::shared_ptr<Node> make_node(Connective kind) {
    return std::allocate_shared<Node>(detail::PoolAllocator<Node>{}, kind);
  }

  static BasicFormula binary(Connective kind, BasicFormula lhs, BasicFormula rhs) {
    auto node = make_node(kind);
    node->lhs = std::move(lhs);
    node->rhs = std::move(rhs);
    return BasicFormula(std::move(node));
  }

  std::shared_ptr<const Node> node_;
};

template <bool WithImplication>
struct BasicFormula<WithImplication>::Node {
  explicit Node(Connective k) : kind(k) {}
  Node(const Node&) = delete;
  Node& operator=(const Node&) = delete;

  // Shallow drops recurse normally. Past a fixed nesting depth, uniquely owned
  // descendants are unlinked onto an explicit stack so that dropping a deep
  // tree never overflows the host stack.
  ~Node() {
    thread_local std::size_t nesting = 0;
    if (nesting < kRecursiveDropLimit) {
      ++nesting;
      {
        BasicFormula l = std::move(lhs);
        BasicFormula r = std::move(rhs);
      }
      --nesting;
      return;
    }
    std::vector<std::shared_ptr<const Node>> doomed;
    auto detach = [&doomed](BasicFormula& child) {
      if (child.node_ && child.node_.use_count() == 1) doomed.push_back(std::move(child.node_));
    };
    detach(lhs);
    detach(rhs);
    while (!doomed.empty()) {
      std::shared_ptr<const Node> node = std::move(doomed.back());
      doomed.pop_back();
      detach(node->lhs);
      detach(node->rhs);
    }
  }

  static constexpr std::size_t kRecursiveDropLimit = 512;

  Connective kind;
  bool value = false;
  std::string name;
  // mutable only so the destructor can unlink children of const nodes
  mutable BasicFormula lhs;
  mutable BasicFormula rhs;
};

/// Full propositional formula, including implication.
using Formula = BasicFormula<true>;
/// Implication-free formula; the pipeline's working and output representation.
using FormulaWI = BasicFormula<false>;

/// Total assignment of truth values: explicit entries plus a default for every
/// other identifier.
class Valuation {
 public:
  explicit Valuation(bool fallback = false) : fallback_(fallback) {}
  Valuation(std::initializer_list<std::pair<const std::string, bool>> entries, bool fallback = false)
      : values_(entries), fallback_(fallback) {}

  bool operator()(std::string_view atom) const {
    auto it = values_.find(atom);
    return it == values_.end() ? fallback_ : it->second;
  }

  void set(std::string atom, bool value) { values_.insert_or_assign(std::move(atom), value); }
  bool fallback() const noexcept { return fallback_; }
  const std::map<std::string, bool, std::less<>>& entries() const noexcept { return values_; }

  friend bool operator==(const Valuation&, const Valuation&) = default;

 private:
  std::map<std::string, bool, std::less<>> values_;
  bool fallback_;
};

inline bool eval(const Valuation& v, const Formula& f) {
  switch (f.kind()) {
    case Connective::Var:
      return v(f.name());
    case Connective::Const:
      return f.value();
    case Connective::And:
      return eval(v, f.lhs()) && eval(v, f.rhs());
    case Connective::Or:
      return eval(v, f.lhs()) || eval(v, f.rhs());
    case Connective::Impl:
      return !eval(v, f.lhs()) || eval(v, f.rhs());
    case Connective::Neg:
      return !eval(v, f.operand());
  }
  return false;
}

inline bool eval_wi(const Valuation& v, const FormulaWI& f) {
  switch (f.kind()) {
    case Connective::Var:
      return v(f.name());
    case Connective::Const:
      return f.value();
    case Connective::And:
      return eval_wi(v, f.lhs()) && eval_wi(v, f.rhs());
    case Connective::Or:
      return eval_wi(v, f.lhs()) || eval_wi(v, f.rhs());
    case Connective::Neg:
      return !eval_wi(v, f.operand());
    case Connective::Impl:
      break;
  }
  return false;
}

/// Constructor count: leaves weigh 1, every connective adds 1.
template <bool I>
std::int64_t size(const BasicFormula<I>& phi) {
  std::int64_t total = 0;
  std::vector<const BasicFormula<I>*> pending{&phi};
  while (!pending.empty()) {
    const BasicFormula<I>* f = pending.back();
    pending.pop_back();
    ++total;
    if (f->is(Connective::Neg)) {
      pending.push_back(&f->operand());
    } else if (f->is_binary()) {
      pending.push_back(&f->rhs());
      pending.push_back(&f->lhs());
    }
  }
  return total;
}

/// Reinjects an implication-free formula into the full language.
inline Formula embed(const FormulaWI& phi) {
  switch (phi.kind()) {
    case Connective::Var:
      return Formula::Var(phi);
    case Connective::Const:
      return Formula::Const(phi.value());
    case Connective::And:
      return Formula::And(embed(phi.lhs()), embed(phi.rhs()));
    case Connective::Or:
      return Formula::Or(embed(phi.lhs()), embed(phi.rhs()));
    case Connective::Neg:
      return Formula::Neg(embed(phi.operand()));
    case Connective::Impl:
      break;
  }
  throw std::logic_error("implication inside an implication-free formula");
}

/// The implication-free view of `phi`, or nothing if it contains an implication.
inline std::optional<FormulaWI> narrow(const Formula& phi) {
  switch (phi.kind()) {
    case Connective::Var:
      return FormulaWI::Var(phi);
    case Connective::Const:
      return FormulaWI::Const(phi.value());
    case Connective::Neg: {
      auto inner = narrow(phi.operand());
      if (!inner) return std::nullopt;
      return FormulaWI::Neg(std::move(*inner));
    }
    case Connective::And:
    case Connective::Or: {
      auto l = narrow(phi.lhs());
      if (!l) return std::nullopt;
      auto r = narrow(phi.rhs());
      if (!r) return std::nullopt;
      return phi.is(Connective::And) ? FormulaWI::And(std::move(*l), std::move(*r))
                                     : FormulaWI::Or(std::move(*l), std::move(*r));
    }
    case Connective::Impl:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace cnf
