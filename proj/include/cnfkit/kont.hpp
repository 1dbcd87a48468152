#pragma once

// First-order continuation stacks for the abstract machine. Each stage has its
// own frame alphabet; a stack always bottoms out in that stage's Id frame.

#include <cstddef>
#include <ranges>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "cnfkit/formula.hpp"

namespace cnf::machine {

namespace impl_frame {
struct Id {};
// The payload is the negated subformula; applying the frame never reads it.
struct Neg { Formula unused; };
struct OrLeft { Formula pending; };
struct OrRight { FormulaWI done; };
struct AndLeft { Formula pending; };
struct AndRight { FormulaWI done; };
struct ImplLeft { Formula pending; };
struct ImplRight { FormulaWI done; };
}  // namespace impl_frame

using ImplFrame = std::variant<impl_frame::Id, impl_frame::Neg, impl_frame::OrLeft,
                               impl_frame::OrRight, impl_frame::AndLeft, impl_frame::AndRight,
                               impl_frame::ImplLeft, impl_frame::ImplRight>;

namespace nnfc_frame {
struct Id {};
// Saved operand of the eliminated double negation; never read.
struct NegNeg { FormulaWI unused; };
struct NegAndLeft { FormulaWI pending; };
struct NegAndRight { FormulaWI done; };
struct NegOrLeft { FormulaWI pending; };
struct NegOrRight { FormulaWI done; };
struct AndLeft { FormulaWI pending; };
struct AndRight { FormulaWI done; };
struct OrLeft { FormulaWI pending; };
struct OrRight { FormulaWI done; };
}  // namespace nnfc_frame

using NnfcFrame =
    std::variant<nnfc_frame::Id, nnfc_frame::NegNeg, nnfc_frame::NegAndLeft,
                 nnfc_frame::NegAndRight, nnfc_frame::NegOrLeft, nnfc_frame::NegOrRight,
                 nnfc_frame::AndLeft, nnfc_frame::AndRight, nnfc_frame::OrLeft, nnfc_frame::OrRight>;

namespace distr_frame {
struct Id {};
struct Left { FormulaWI pending1; FormulaWI pending2; };
struct Right { FormulaWI done; };
}  // namespace distr_frame

using DistrFrame = std::variant<distr_frame::Id, distr_frame::Left, distr_frame::Right>;

namespace cnfc_frame {
struct Id {};
struct OrLeft { FormulaWI pending; };
struct OrRight { FormulaWI done; };
struct AndLeft { FormulaWI pending; };
struct AndRight { FormulaWI done; };
}  // namespace cnfc_frame

using CnfcFrame = std::variant<cnfc_frame::Id, cnfc_frame::OrLeft, cnfc_frame::OrRight,
                               cnfc_frame::AndLeft, cnfc_frame::AndRight>;

/**
 * Continuation stack. Index 0 holds the Id frame; the top is the innermost
 * pending computation. `frames()` walks from the top down to Id, the order in
 * which the frames will be applied.
 */
template <class Frame>
class Kont {
 public:
  Kont() { frames_.emplace_back(std::in_place_index<0>); }

  /// Builds a stack from frames listed top first, without the trailing Id.
  static Kont of(std::initializer_list<Frame> top_first) {
    Kont k;
    for (auto it = std::rbegin(top_first); it != std::rend(top_first); ++it) k.push(*it);
    return k;
  }

  void push(Frame frame) {
    if (frame.index() == 0) throw std::invalid_argument("Id frame can only sit at the bottom");
    frames_.push_back(std::move(frame));
  }

  Frame pop() {
    if (at_id()) throw std::logic_error("pop on an Id-only stack");
    Frame top = std::move(frames_.back());
    frames_.pop_back();
    return top;
  }

  const Frame& top() const noexcept { return frames_.back(); }
  bool at_id() const noexcept { return frames_.size() == 1; }
  /// Number of frames including the bottom Id.
  std::size_t depth() const noexcept { return frames_.size(); }

  auto frames() const { return frames_ | std::views::reverse; }

 private:
  std::vector<Frame> frames_;
};

using ImplKont = Kont<ImplFrame>;
using NnfcKont = Kont<NnfcFrame>;
using DistrKont = Kont<DistrFrame>;
using CnfcKont = Kont<CnfcFrame>;

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

inline std::string_view frame_name(const ImplFrame& f) {
  static constexpr std::string_view names[] = {"impl.Id",      "impl.Neg",      "impl.OrLeft",
                                               "impl.OrRight", "impl.AndLeft",  "impl.AndRight",
                                               "impl.ImplLeft", "impl.ImplRight"};
  return names[f.index()];
}

inline std::string_view frame_name(const NnfcFrame& f) {
  static constexpr std::string_view names[] = {
      "nnfc.Id",      "nnfc.NegNeg",  "nnfc.NegAndLeft", "nnfc.NegAndRight", "nnfc.NegOrLeft",
      "nnfc.NegOrRight", "nnfc.AndLeft", "nnfc.AndRight",  "nnfc.OrLeft",      "nnfc.OrRight"};
  return names[f.index()];
}

inline std::string_view frame_name(const DistrFrame& f) {
  static constexpr std::string_view names[] = {"distr.Id", "distr.Left", "distr.Right"};
  return names[f.index()];
}

inline std::string_view frame_name(const CnfcFrame& f) {
  static constexpr std::string_view names[] = {"cnfc.Id", "cnfc.OrLeft", "cnfc.OrRight",
                                               "cnfc.AndLeft", "cnfc.AndRight"};
  return names[f.index()];
}

}  // namespace cnf::machine
