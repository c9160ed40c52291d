#include "hcons/lambda.hpp"

#include <functional>
#include <memory>
#include <string>

#include "hcons/error.hpp"

namespace hcons::lambda {

namespace {

constexpr std::uint8_t kVarTag = 0;
constexpr std::uint8_t kAppTag = 1;
constexpr std::uint8_t kAbsTag = 2;

}  // namespace

LambdaManager::LambdaManager(LambdaOptions options) : options_(options), guard_(options.max_depth) {
  set_memoize(options_.memoize);
}

void LambdaManager::check_valid(TermRef t) const {
  if (!pool_.contains(t.id)) raise(Errc::invalid_child, "term " + std::to_string(t.id.value) + " not in manager");
}

TermRef LambdaManager::mk_var(std::uint64_t index) { return TermRef{pool_.intern(Payload(kVarTag, {}, {index}))}; }

TermRef LambdaManager::mk_app(TermRef fn, TermRef arg) {
  return TermRef{pool_.intern(Payload(kAppTag, {fn.id, arg.id}))};
}

TermRef LambdaManager::mk_abs(TermRef body) { return TermRef{pool_.intern(Payload(kAbsTag, {body.id}))}; }

TermNode LambdaManager::node(TermRef t) const {
  const Payload& p = pool_.resolve(t.id);
  switch (p.tag()) {
    case kVarTag: return TermNode{TermKind::Var, p.attr(0)};
    case kAppTag: return TermNode{TermKind::App, 0, TermRef{p.child(0)}, TermRef{p.child(1)}};
    default: return TermNode{TermKind::Abs, 0, {}, {}, TermRef{p.child(0)}};
  }
}

// ---------------------------------------------------------------------------
// lift / subst

TermRef LambdaManager::lifti(std::uint64_t n, TermRef t, std::uint64_t k) {
  check_valid(t);
  auto fix = memo_fix(
      m_lifti_,
      [this](auto& self, const MemoKey& key) -> TermRef {
        const std::uint64_t n = key[0], k = key[2];
        TermNode x = node(TermRef{UniqueId{key[1]}});
        switch (x.kind) {
          case TermKind::Var: return x.index < k ? mk_var(x.index) : mk_var(x.index + n);
          case TermKind::Abs: return mk_abs(self(MemoKey{n, x.body.id.value, k + 1}));
          case TermKind::App: {
            TermRef f = self(MemoKey{n, x.fn.id.value, k});
            TermRef a = self(MemoKey{n, x.arg.id.value, k});
            return mk_app(f, a);
          }
        }
        return TermRef{};
      },
      guard_);
  return fix(MemoKey{n, t.id.value, k});
}

TermRef LambdaManager::subst(TermRef w, std::uint64_t n, TermRef t) {
  check_valid(w);
  check_valid(t);
  auto fix = memo_fix(
      m_subst_,
      [this](auto& self, const MemoKey& key) -> TermRef {
        const TermRef w{UniqueId{key[0]}};
        const std::uint64_t n = key[1];
        TermNode x = node(TermRef{UniqueId{key[2]}});
        switch (x.kind) {
          case TermKind::Var:
            if (x.index < n) return mk_var(x.index);
            if (x.index == n) return lift(n, w);
            return mk_var(x.index - 1);
          case TermKind::Abs: return mk_abs(self(MemoKey{w.id.value, n + 1, x.body.id.value}));
          case TermKind::App: {
            TermRef f = self(MemoKey{w.id.value, n, x.fn.id.value});
            TermRef a = self(MemoKey{w.id.value, n, x.arg.id.value});
            return mk_app(f, a);
          }
        }
        return TermRef{};
      },
      guard_);
  return fix(MemoKey{w.id.value, n, t.id.value});
}

// ---------------------------------------------------------------------------
// Normalization

void LambdaManager::count_step() {
  ++total_steps_;
  if (++steps_ > options_.max_steps) {
    raise(Errc::depth_exceeded, "more than " + std::to_string(options_.max_steps) + " reduction steps");
  }
}

template <class Fn>
TermRef LambdaManager::top_level(Fn fn) {
  if (guard_.depth() == 0) steps_ = 0;
  return fn();
}

TermRef LambdaManager::hnf(TermRef t) {
  check_valid(t);
  return top_level([&] { return hnf_rec(t); });
}

TermRef LambdaManager::nf(TermRef t) {
  check_valid(t);
  return top_level([&] { return nf_rec(t); });
}

// Head reductions are iterated rather than recursed on; every term met along
// the way has the same head normal form and is memoized with it.
TermRef LambdaManager::hnf_rec(TermRef t) {
  if (auto hit = m_hnf_.get(MemoKey{t.id.value})) return *hit;
  DepthGuard::Frame frame(guard_);
  std::vector<TermRef> chain{t};
  TermRef result{};
  for (;;) {
    m_hnf_.note_body_evaluation();
    TermNode x = node(t);
    if (x.kind == TermKind::Var) {
      result = t;
      break;
    }
    if (x.kind == TermKind::Abs) {
      result = mk_abs(hnf_rec(x.body));
      break;
    }
    TermRef head = hnf_rec(x.fn);
    TermNode h = node(head);
    if (h.kind != TermKind::Abs) {
      result = mk_app(head, x.arg);
      break;
    }
    count_step();
    t = subst(x.arg, 0, h.body);
    if (auto hit = m_hnf_.get(MemoKey{t.id.value})) {
      result = *hit;
      break;
    }
    chain.push_back(t);
  }
  for (TermRef c : chain) m_hnf_.put(MemoKey{c.id.value}, result);
  return result;
}

TermRef LambdaManager::nf_rec(TermRef t) {
  if (auto hit = m_nf_.get(MemoKey{t.id.value})) return *hit;
  DepthGuard::Frame frame(guard_);
  std::vector<TermRef> chain{t};
  TermRef result{};
  for (;;) {
    m_nf_.note_body_evaluation();
    TermNode x = node(t);
    if (x.kind == TermKind::Var) {
      result = t;
      break;
    }
    if (x.kind == TermKind::Abs) {
      result = mk_abs(nf_rec(x.body));
      break;
    }
    TermRef head = hnf_rec(x.fn);
    TermNode h = node(head);
    if (h.kind != TermKind::Abs) {
      TermRef f = nf_rec(head);
      TermRef a = nf_rec(x.arg);
      result = mk_app(f, a);
      break;
    }
    count_step();
    t = subst(x.arg, 0, h.body);
    if (auto hit = m_nf_.get(MemoKey{t.id.value})) {
      result = *hit;
      break;
    }
    chain.push_back(t);
  }
  for (TermRef c : chain) m_nf_.put(MemoKey{c.id.value}, result);
  return result;
}

// ---------------------------------------------------------------------------
// Church encodings

TermRef LambdaManager::church(std::uint64_t n) {
  TermRef body = mk_var(0);
  for (std::uint64_t i = 0; i < n; ++i) body = mk_app(mk_var(1), body);
  return mk_abs(mk_abs(body));
}

TermRef LambdaManager::church_list(std::span<const std::uint64_t> xs) {
  // Elements are closed, so they need no shifting under the two binders.
  TermRef body = mk_var(0);
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) body = mk_app(mk_app(mk_var(1), church(*it)), body);
  return mk_abs(mk_abs(body));
}

std::uint64_t LambdaManager::decode_church(TermRef t) const {
  check_valid(t);
  TermNode outer = node(t);
  if (outer.kind != TermKind::Abs) raise(Errc::shape, "church numeral: expected \\f");
  TermNode inner = node(outer.body);
  if (inner.kind != TermKind::Abs) raise(Errc::shape, "church numeral: expected \\x");
  std::uint64_t n = 0;
  TermNode x = node(inner.body);
  while (x.kind == TermKind::App) {
    TermNode f = node(x.fn);
    if (f.kind != TermKind::Var || f.index != 1) raise(Errc::shape, "church numeral: expected f applied");
    ++n;
    x = node(x.arg);
  }
  if (x.kind != TermKind::Var || x.index != 0) raise(Errc::shape, "church numeral: expected x at the bottom");
  return n;
}

std::vector<std::uint64_t> LambdaManager::decode_list(TermRef t) const {
  check_valid(t);
  TermNode outer = node(t);
  if (outer.kind != TermKind::Abs) raise(Errc::shape, "church list: expected \\c");
  TermNode inner = node(outer.body);
  if (inner.kind != TermKind::Abs) raise(Errc::shape, "church list: expected \\n");
  std::vector<std::uint64_t> out;
  TermNode x = node(inner.body);
  while (x.kind == TermKind::App) {
    TermNode cons = node(x.fn);
    if (cons.kind != TermKind::App) raise(Errc::shape, "church list: expected c h");
    TermNode c = node(cons.fn);
    if (c.kind != TermKind::Var || c.index != 1) raise(Errc::shape, "church list: expected c");
    out.push_back(decode_church(cons.arg));
    x = node(x.arg);
  }
  if (x.kind != TermKind::Var || x.index != 0) raise(Errc::shape, "church list: expected n at the end");
  return out;
}

// ---------------------------------------------------------------------------
// Named-binder builder used to write the combinators below readably. Names are
// resolved to de Bruijn indices against the enclosing binders at build time.

namespace {

class Expr {
 public:
  using Build = std::function<TermRef(LambdaManager&, std::vector<std::string>&)>;

  explicit Expr(Build b) : build_(std::make_shared<Build>(std::move(b))) {}
  Expr(const char* name) : Expr(std::string(name)) {}  // NOLINT: variables read as plain strings
  Expr(std::string name)                               // NOLINT
      : Expr(Build([name](LambdaManager& m, std::vector<std::string>& scope) {
          for (std::size_t i = scope.size(); i-- > 0;) {
            if (scope[i] == name) return m.mk_var(scope.size() - 1 - i);
          }
          raise(Errc::usage, "unbound name '" + name + "'");
        })) {}

  TermRef build(LambdaManager& m, std::vector<std::string>& scope) const { return (*build_)(m, scope); }
  TermRef build(LambdaManager& m) const {
    std::vector<std::string> scope;
    return build(m, scope);
  }

  template <class... Args>
  Expr operator()(const Expr& arg, const Args&... rest) const {
    Expr f = *this;
    Expr applied{Build([f, arg](LambdaManager& m, std::vector<std::string>& scope) {
      TermRef ft = f.build(m, scope);
      TermRef at = arg.build(m, scope);
      return m.mk_app(ft, at);
    })};
    if constexpr (sizeof...(rest) == 0) {
      return applied;
    } else {
      return applied(rest...);
    }
  }

 private:
  std::shared_ptr<const Build> build_;
};

Expr lam(std::string name, Expr body) {
  return Expr{Expr::Build([name = std::move(name), body](LambdaManager& m, std::vector<std::string>& scope) {
    scope.push_back(name);
    TermRef b = body.build(m, scope);
    scope.pop_back();
    return m.mk_abs(b);
  })};
}

Expr lam(std::initializer_list<const char*> names, Expr body) {
  for (auto it = std::rbegin(names); it != std::rend(names); ++it) body = lam(*it, body);
  return body;
}

Expr closed(TermRef t) {
  return Expr{Expr::Build([t](LambdaManager&, std::vector<std::string>&) { return t; })};
}

const Expr kTrue = lam({"t", "f"}, "t");
const Expr kFalse = lam({"t", "f"}, "f");
const Expr kNot = lam("b", Expr("b")(kFalse, kTrue));
const Expr kPair = lam({"a", "b", "s"}, Expr("s")("a", "b"));
const Expr kFst = lam("p", Expr("p")(kTrue));
const Expr kSnd = lam("p", Expr("p")(kFalse));

const Expr kPred = lam({"n", "f", "x"}, Expr("n")(lam({"g", "h"}, Expr("h")(Expr("g")("f"))), lam("u", "x"),
                                                   lam("u", "u")));
const Expr kSub = lam({"m", "n"}, Expr("n")(kPred, "m"));
const Expr kIsZero = lam("n", Expr("n")(lam("z", kFalse), kTrue));
const Expr kLeq = lam({"m", "n"}, kIsZero(kSub("m", "n")));
const Expr kLt = lam({"m", "n"}, kNot(kLeq("n", "m")));

const Expr kPlus = lam({"m", "n", "f", "x"}, Expr("m")("f", Expr("n")("f", "x")));
const Expr kMul = lam({"m", "n", "f"}, Expr("m")(Expr("n")("f")));

const Expr kNil = lam({"c", "n"}, "n");
const Expr kCons = lam({"h", "t", "c", "n"}, Expr("c")("h", Expr("t")("c", "n")));
const Expr kIsNil = lam("l", Expr("l")(lam({"h", "r"}, kFalse), kTrue));
const Expr kHead = lam("l", Expr("l")(lam({"h", "r"}, "h"), kNil));
const Expr kTail = lam("l", kFst(Expr("l")(lam({"h", "p"}, kPair(kSnd("p"), kCons("h", kSnd("p")))), kPair(kNil, kNil))));
const Expr kFilter = lam({"p", "l"}, Expr("l")(lam({"h", "r"}, Expr("p")("h", kCons("h", "r"), "r")), kNil));
const Expr kAppend = lam({"a", "b", "c", "n"}, Expr("a")("c", Expr("b")("c", "n")));

// Turing's fixed point: (\x.\y. y (x x y)) (\x.\y. y (x x y))
const Expr kTheta = [] {
  Expr half = lam({"x", "y"}, Expr("y")(Expr("x")("x", "y")));
  return half(half);
}();

const Expr kQuicksort = kTheta(lam(
    {"qs", "l"},
    kIsNil("l")(kNil, kAppend(Expr("qs")(kFilter(lam("x", kLt("x", kHead("l"))), kTail("l"))),
                              kCons(kHead("l"), Expr("qs")(kFilter(lam("x", kNot(kLt("x", kHead("l")))), kTail("l"))))))));

}  // namespace

TermRef LambdaManager::church_add(TermRef a, TermRef b) { return kPlus(closed(a), closed(b)).build(*this); }
TermRef LambdaManager::church_mul(TermRef a, TermRef b) { return kMul(closed(a), closed(b)).build(*this); }

TermRef LambdaManager::quicksort_term() {
  if (!quicksort_built_) {
    quicksort_ = kQuicksort.build(*this);
    quicksort_built_ = true;
  }
  return quicksort_;
}

std::vector<std::uint64_t> LambdaManager::sort(std::span<const std::uint64_t> xs) {
  TermRef list = church_list(xs);
  return decode_list(nf(mk_app(quicksort_term(), list)));
}

// ---------------------------------------------------------------------------

std::vector<std::pair<std::string, MemoStats>> LambdaManager::memo_stats() const {
  return {{"lifti", m_lifti_.stats()}, {"subst", m_subst_.stats()}, {"hnf", m_hnf_.stats()}, {"nf", m_nf_.stats()}};
}

void LambdaManager::reset_memo() {
  for (auto* t : {&m_lifti_, &m_subst_, &m_hnf_, &m_nf_}) {
    t->clear();
    t->reset_stats();
  }
}

void LambdaManager::set_memoize(bool on) noexcept {
  options_.memoize = on;
  for (auto* t : {&m_lifti_, &m_subst_, &m_hnf_, &m_nf_}) t->set_enabled(on);
}

std::string to_string(const LambdaManager& m, TermRef t) {
  TermNode x = m.node(t);
  switch (x.kind) {
    case TermKind::Var: return std::to_string(x.index);
    case TermKind::Abs: return "\\ " + to_string(m, x.body);
    case TermKind::App: return "(" + to_string(m, x.fn) + " " + to_string(m, x.arg) + ")";
  }
  return "?";
}

}  // namespace hcons::lambda
