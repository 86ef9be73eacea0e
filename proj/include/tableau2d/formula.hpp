#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tableau2d {

enum class Base : std::uint8_t { Luk, Godel };
enum class ImplKind : std::uint8_t { Arrow, WArrow };

struct LogicId {
  Base base = Base::Luk;
  ImplKind impl = ImplKind::Arrow;

  static constexpr LogicId luk_arrow() { return {Base::Luk, ImplKind::Arrow}; }
  static constexpr LogicId luk_warrow() { return {Base::Luk, ImplKind::WArrow}; }
  static constexpr LogicId godel_arrow() { return {Base::Godel, ImplKind::Arrow}; }
  static constexpr LogicId godel_warrow() { return {Base::Godel, ImplKind::WArrow}; }

  bool is_luk() const { return base == Base::Luk; }
  bool is_godel() const { return base == Base::Godel; }
  bool is_arrow() const { return impl == ImplKind::Arrow; }

  // "luk-arrow", "luk-warrow", "godel-arrow", "godel-warrow".
  std::string name() const;
  static std::optional<LogicId> from_name(std::string_view name);

  friend bool operator==(const LogicId&, const LogicId&) = default;
};

inline constexpr LogicId kAllLogics[] = {LogicId::luk_arrow(), LogicId::luk_warrow(),
                                         LogicId::godel_arrow(), LogicId::godel_warrow()};

enum class Op : std::uint8_t { Bot, Top, Atom, Neg, And, Or, Imp, CoImp, WImp };

bool is_binary(Op op);
// ASCII token of a connective, e.g. "->" for Imp.
std::string_view op_token(Op op);

// Immutable, structurally compared formula tree. Copies share nodes.
class Formula {
 public:
  // The constant 0.
  Formula();

  static Formula bot();
  static Formula top();
  static Formula atom(std::string name);
  static Formula neg(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula imp(Formula a, Formula b);
  static Formula coimp(Formula a, Formula b);
  static Formula wimp(Formula a, Formula b);
  static Formula binary(Op op, Formula a, Formula b);

  Op op() const { return node_->op; }
  bool is_atom() const { return node_->op == Op::Atom; }
  bool is_constant() const { return node_->op == Op::Bot || node_->op == Op::Top; }
  // Atom name; empty for other nodes.
  const std::string& name() const { return node_->name; }
  // Operand of Neg, left operand of binary nodes.
  Formula lhs() const;
  Formula rhs() const;

  std::size_t hash() const { return node_->hash; }
  // Number of nodes.
  std::size_t size() const { return node_->size; }
  int depth() const { return node_->depth; }

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }
  // Total order used for deterministic containers.
  friend bool operator<(const Formula& a, const Formula& b);

 private:
  struct Node {
    Op op;
    std::string name;
    std::shared_ptr<const Node> a, b;
    std::size_t hash;
    std::size_t size;
    int depth;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(Op op, std::string name, const Formula* a, const Formula* b);
  static int compare(const Node* x, const Node* y);

  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class SignatureError : public std::runtime_error {
 public:
  SignatureError(const std::string& what, std::string connective)
      : std::runtime_error(what), connective_(std::move(connective)) {}
  const std::string& connective() const { return connective_; }

 private:
  std::string connective_;
};

// Surface syntax tree: primitives plus the definable connectives.
enum class SurfaceOp : std::uint8_t {
  Bot, Top, Atom, Neg, And, Or, Imp, CoImp, WImp,
  Tilde,  // ~φ, strong negation
  Odot,   // φ ⊙ ψ
  Iff,    // φ ↔ ψ
};

struct DerivedForm {
  SurfaceOp op = SurfaceOp::Bot;
  std::string name;
  std::vector<DerivedForm> args;
  std::size_t position = 0;
};

// Lifts a primitive formula into surface syntax (no derived nodes).
DerivedForm lift(const Formula& f);

// Macro-expands ~, ⊙ and ↔ for the given logic and checks the signature.
// ~φ is φ→0 in Arrow logics and φ⇾0 in WArrow logics; ⊙ and ↔ need →.
Formula expand_derived(const DerivedForm& f, LogicId logic);

DerivedForm parse_surface(std::string_view text);
Formula parse(std::string_view text, LogicId logic);

// Primitive connectives only, minimal parentheses; parse(render(f)) == f.
std::string render(const Formula& f);

bool in_signature(Op op, LogicId logic);
void validate_signature(const Formula& f, LogicId logic);
bool conforms(const Formula& f, LogicId logic);

// Pushes ¬ to the atoms. Arrow logics only.
Formula nnf(const Formula& f, LogicId logic);
bool is_nnf(const Formula& f);

// Sorted, deduplicated atom names.
std::vector<std::string> atoms(const Formula& f);
std::size_t connective_count(const Formula& f);

// Derived connectives built directly as primitive trees (Arrow form).
Formula tilde(const Formula& f);
Formula odot(const Formula& a, const Formula& b);
Formula iff(const Formula& a, const Formula& b);

// Disjunction of p_i <-> p_j over 1 <= i < j <= n+1, atoms named prefix1..prefix{n+1}.
Formula family_fn(int n, std::string_view prefix = "p");
// F_2 over p1..p3 fused with F_n over q1..q{n+1}.
Formula family_f2_odot_fn(int n);
// F_k fused with itself, same atoms.
Formula family_fk_odot_fk(int k);

}  // namespace tableau2d
