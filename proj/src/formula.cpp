#include "hcons/formula.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <limits>

#include "hcons/error.hpp"
#include "hcons/word_kernels.hpp"

namespace hcons::formula {

struct Formula::Node {
  Op op;
  bool value = false;
  VarIndex index = 0;
  Formula lhs{nullptr};
  Formula rhs{nullptr};
};

Formula Formula::constant(bool value) { return Formula(std::make_shared<const Node>(Node{Op::Const, value})); }

Formula Formula::var(VarIndex index) {
  if (index == 0 || index == bdd::kLeafVar) raise(Errc::range, "variable index must be in 1.." + std::to_string(bdd::kLeafVar - 1));
  return Formula(std::make_shared<const Node>(Node{Op::Var, false, index}));
}

Formula Formula::unary(Op op, Formula operand) {
  if (op != Op::Not) raise(Errc::usage, "not a unary connective");
  return Formula(std::make_shared<const Node>(Node{op, false, 0, std::move(operand)}));
}

Formula Formula::binary(Op op, Formula lhs, Formula rhs) {
  if (op == Op::Const || op == Op::Var || op == Op::Not) raise(Errc::usage, "not a binary connective");
  return Formula(std::make_shared<const Node>(Node{op, false, 0, std::move(lhs), std::move(rhs)}));
}

Op Formula::op() const noexcept { return node_->op; }
bool Formula::value() const noexcept { return node_->value; }
VarIndex Formula::index() const noexcept { return node_->index; }
const Formula& Formula::lhs() const noexcept { return node_->lhs; }
const Formula& Formula::rhs() const noexcept { return node_->rhs; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op()) return false;
  switch (a.op()) {
    case Op::Const: return a.value() == b.value();
    case Op::Var: return a.index() == b.index();
    case Op::Not: return a.lhs() == b.lhs();
    default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

Formula operator!(Formula f) { return Formula::unary(Op::Not, std::move(f)); }
Formula operator&(Formula f, Formula g) { return Formula::binary(Op::And, std::move(f), std::move(g)); }
Formula operator|(Formula f, Formula g) { return Formula::binary(Op::Or, std::move(f), std::move(g)); }
Formula operator^(Formula f, Formula g) { return Formula::binary(Op::Xor, std::move(f), std::move(g)); }
Formula implies(Formula f, Formula g) { return Formula::binary(Op::Implies, std::move(f), std::move(g)); }
Formula iff(Formula f, Formula g) { return Formula::binary(Op::Iff, std::move(f), std::move(g)); }

VarIndex max_var(const Formula& f) {
  switch (f.op()) {
    case Op::Const: return 0;
    case Op::Var: return f.index();
    case Op::Not: return max_var(f.lhs());
    default: return std::max(max_var(f.lhs()), max_var(f.rhs()));
  }
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula parse_all() {
    Formula f = parse_iff();
    skip_space();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  Formula parse_iff() {
    Formula lhs = parse_implies();
    if (accept("<->")) return iff(std::move(lhs), parse_iff());
    return lhs;
  }

  Formula parse_implies() {
    Formula lhs = parse_or();
    if (accept("->")) return implies(std::move(lhs), parse_implies());
    return lhs;
  }

  Formula parse_or() {
    Formula f = parse_xor();
    while (accept("|")) f = std::move(f) | parse_xor();
    return f;
  }

  Formula parse_xor() {
    Formula f = parse_and();
    while (accept("^")) f = std::move(f) ^ parse_and();
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (accept("&")) f = std::move(f) & parse_unary();
    return f;
  }

  Formula parse_unary() {
    if (accept("!")) return !parse_unary();
    return parse_atom();
  }

  Formula parse_atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Formula f = parse_iff();
      if (!accept(")")) fail("expected ')'");
      return f;
    }
    if (c == '0' || c == '1') {
      ++pos_;
      return Formula::constant(c == '1');
    }
    if (c == 'x') {
      std::size_t start = pos_++;
      std::uint64_t index = 0;
      std::size_t digits = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        index = std::min<std::uint64_t>(index * 10 + static_cast<std::uint64_t>(text_[pos_] - '0'),
                                        std::numeric_limits<std::uint64_t>::max() / 16);
        ++pos_;
        ++digits;
      }
      if (digits == 0) fail("expected digits after 'x'");
      if (index == 0 || index >= bdd::kLeafVar) {
        raise(Errc::range, location(start) + ": variable index out of range in '" +
                               std::string(text_.substr(start, pos_ - start)) + "'");
      }
      return Formula::var(static_cast<VarIndex>(index));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string location(std::size_t at) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
  }

  [[noreturn]] void fail(const std::string& msg) const { raise(Errc::syntax, location(pos_) + ": " + msg); }

  std::string_view text_;
  std::size_t pos_ = 0;
};

int precedence(Op op) {
  switch (op) {
    case Op::Iff: return 1;
    case Op::Implies: return 2;
    case Op::Or: return 3;
    case Op::Xor: return 4;
    case Op::And: return 5;
    case Op::Not: return 6;
    default: return 7;
  }
}

std::string_view symbol(Op op) {
  switch (op) {
    case Op::Iff: return " <-> ";
    case Op::Implies: return " -> ";
    case Op::Or: return " | ";
    case Op::Xor: return " ^ ";
    case Op::And: return " & ";
    default: return "";
  }
}

void print(const Formula& f, int min_prec, std::string& out) {
  const int p = precedence(f.op());
  const bool parens = p < min_prec;
  if (parens) out += '(';
  switch (f.op()) {
    case Op::Const: out += f.value() ? '1' : '0'; break;
    case Op::Var: out += 'x' + std::to_string(f.index()); break;
    case Op::Not:
      out += '!';
      print(f.lhs(), p, out);
      break;
    default: {
      const bool right_assoc = f.op() == Op::Iff || f.op() == Op::Implies;
      print(f.lhs(), right_assoc ? p + 1 : p, out);
      out += symbol(f.op());
      print(f.rhs(), right_assoc ? p : p + 1, out);
    }
  }
  if (parens) out += ')';
}

}  // namespace

Formula parse(std::string_view text) { return Parser(text).parse_all(); }

std::string to_string(const Formula& f) {
  std::string out;
  print(f, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Semantics

bool eval_formula(const Formula& f, const bdd::Env& env) {
  switch (f.op()) {
    case Op::Const: return f.value();
    case Op::Var: {
      auto v = env.get(f.index());
      if (!v) raise(Errc::unbound_variable, "x" + std::to_string(f.index()));
      return *v;
    }
    case Op::Not: return !eval_formula(f.lhs(), env);
    case Op::And: return eval_formula(f.lhs(), env) && eval_formula(f.rhs(), env);
    case Op::Or: return eval_formula(f.lhs(), env) || eval_formula(f.rhs(), env);
    case Op::Xor: return eval_formula(f.lhs(), env) != eval_formula(f.rhs(), env);
    case Op::Implies: return !eval_formula(f.lhs(), env) || eval_formula(f.rhs(), env);
    case Op::Iff: return eval_formula(f.lhs(), env) == eval_formula(f.rhs(), env);
  }
  return false;
}

bdd::BddRef compile(bdd::BddManager& mgr, const Formula& f) {
  switch (f.op()) {
    case Op::Const: return f.value() ? bdd::kTrue : bdd::kFalse;
    case Op::Var: return mgr.var(f.index());
    case Op::Not: return mgr.mk_not(compile(mgr, f.lhs()));
    default: break;
  }
  bdd::BddRef a = compile(mgr, f.lhs());
  bdd::BddRef b = compile(mgr, f.rhs());
  switch (f.op()) {
    case Op::And: return mgr.mk_and(a, b);
    case Op::Or: return mgr.mk_or(a, b);
    case Op::Xor: return mgr.mk_xor(a, b);
    case Op::Implies: return mgr.mk_or(mgr.mk_not(a), b);
    case Op::Iff: return mgr.mk_not(mgr.mk_xor(a, b));
    default: break;
  }
  raise(Errc::usage, "unhandled connective");
}

// ---------------------------------------------------------------------------
// Benchmark families

Formula urquhart(unsigned n) {
  if (n == 0) raise(Errc::range, "urquhart needs n >= 1");
  std::vector<VarIndex> seq;
  for (int pass = 0; pass < 2; ++pass) {
    for (VarIndex i = 1; i <= n; ++i) seq.push_back(i);
  }
  Formula f = Formula::var(seq.back());
  for (std::size_t i = seq.size() - 1; i-- > 0;) f = iff(Formula::var(seq[i]), std::move(f));
  return f;
}

Formula pigeonhole(unsigned n) {
  if (n == 0) raise(Errc::range, "pigeonhole needs n >= 1");
  if (static_cast<std::uint64_t>(n) * (n + 1) >= bdd::kLeafVar) raise(Errc::range, "pigeonhole too large");
  auto p = [n](unsigned pigeon, unsigned hole) { return Formula::var((pigeon - 1) * n + hole); };

  std::optional<Formula> every_pigeon_placed;
  for (unsigned i = 1; i <= n + 1; ++i) {
    Formula placed = p(i, 1);
    for (unsigned j = 2; j <= n; ++j) placed = std::move(placed) | p(i, j);
    every_pigeon_placed = every_pigeon_placed ? std::move(*every_pigeon_placed) & std::move(placed) : std::move(placed);
  }

  std::optional<Formula> some_hole_shared;
  for (unsigned j = 1; j <= n; ++j) {
    for (unsigned i = 1; i <= n + 1; ++i) {
      for (unsigned k = i + 1; k <= n + 1; ++k) {
        Formula clash = p(i, j) & p(k, j);
        some_hole_shared = some_hole_shared ? std::move(*some_hole_shared) | std::move(clash) : std::move(clash);
      }
    }
  }
  return implies(std::move(*every_pigeon_placed), std::move(*some_hole_shared));
}

// ---------------------------------------------------------------------------
// Truth-table oracle

namespace {

constexpr std::array<std::uint64_t, 6> kLowVarPatterns{
    0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
    0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL,
};

std::vector<std::uint64_t> tabulate(const Formula& f, VarIndex nvars, std::size_t nwords,
                                    const simd::WordKernels& k) {
  std::vector<std::uint64_t> out(nwords);
  switch (f.op()) {
    case Op::Const:
      std::fill(out.begin(), out.end(), f.value() ? ~0ULL : 0ULL);
      return out;
    case Op::Var: {
      VarIndex v = f.index();
      if (v > nvars) raise(Errc::unbound_variable, "x" + std::to_string(v) + " beyond " + std::to_string(nvars) + " variables");
      const unsigned bit = v - 1;
      for (std::size_t w = 0; w < nwords; ++w) {
        out[w] = bit < 6 ? kLowVarPatterns[bit] : (((w >> (bit - 6)) & 1U) ? ~0ULL : 0ULL);
      }
      return out;
    }
    case Op::Not: {
      auto a = tabulate(f.lhs(), nvars, nwords, k);
      k.bit_not(out, a);
      return out;
    }
    default: break;
  }
  auto a = tabulate(f.lhs(), nvars, nwords, k);
  auto b = tabulate(f.rhs(), nvars, nwords, k);
  switch (f.op()) {
    case Op::And: k.bit_and(out, a, b); break;
    case Op::Or: k.bit_or(out, a, b); break;
    case Op::Xor: k.bit_xor(out, a, b); break;
    case Op::Implies: k.bit_implies(out, a, b); break;
    case Op::Iff: k.bit_xnor(out, a, b); break;
    default: break;
  }
  return out;
}

void check_oracle_size(VarIndex nvars) {
  if (nvars > kMaxOracleVars) {
    raise(Errc::oracle_limit, std::to_string(nvars) + " variables exceeds the " + std::to_string(kMaxOracleVars) +
                                  "-variable truth-table limit");
  }
}

}  // namespace

TruthTable truth_table(const Formula& f, VarIndex nvars) {
  check_oracle_size(nvars);
  const std::size_t nwords = nvars <= 6 ? 1 : std::size_t{1} << (nvars - 6);
  TruthTable t{nvars, tabulate(f, nvars, nwords, simd::active_kernels())};
  if (nvars < 6) t.words[0] &= (std::uint64_t{1} << (std::uint64_t{1} << nvars)) - 1;
  return t;
}

EquivResult truth_table_equiv(const Formula& f, const Formula& g, VarIndex nvars) {
  TruthTable tf = truth_table(f, nvars);
  TruthTable tg = truth_table(g, nvars);
  const auto& k = simd::active_kernels();
  std::size_t w = k.first_mismatch(tf.words, tg.words);
  if (w == tf.words.size()) return {true, std::nullopt};
  std::uint64_t diff = tf.words[w] ^ tg.words[w];
  return {false, (static_cast<std::uint64_t>(w) << 6) | static_cast<std::uint64_t>(std::countr_zero(diff))};
}

}  // namespace hcons::formula
