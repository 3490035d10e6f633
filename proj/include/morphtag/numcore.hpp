#pragma once

#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "morphtag/common.hpp"

namespace morphtag {

// ---------------------------------------------------------------------------
// Tensors and parameter storage
// ---------------------------------------------------------------------------

/// Dense row-major tensor of 64-bit floats with a same-shape gradient
/// accumulator. The gradient is allocated lazily, the first time an
/// operation touches the tensor during backpropagation.
struct Tensor {
  std::vector<std::size_t> shape;
  std::vector<double> data;
  mutable std::vector<double> grad;

  static Tensor zeros(std::vector<std::size_t> shape) {
    Tensor t;
    std::size_t n = 1;
    for (std::size_t d : shape) n *= d;
    t.shape = std::move(shape);
    t.data.assign(n, 0.0);
    return t;
  }

  std::size_t size() const { return data.size(); }
  std::size_t rows() const { return shape.at(0); }
  std::size_t cols() const { return shape.at(1); }

  double& at(std::size_t r, std::size_t c) { return data[r * cols() + c]; }
  double at(std::size_t r, std::size_t c) const { return data[r * cols() + c]; }

  bool grad_live() const { return grad.size() == data.size(); }
  void ensure_grad() const {
    if (!grad_live()) grad.assign(data.size(), 0.0);
  }
  void zero_grad() const {
    if (grad_live()) std::fill(grad.begin(), grad.end(), 0.0);
  }
};

/// Xavier-uniform sample: iid uniform on [-a, a], a = sqrt(6/(fan_in+fan_out)).
/// Returned shape is {fan_out, fan_in}.
inline Tensor xavier_uniform(std::size_t fan_in, std::size_t fan_out, Rng& rng) {
  if (fan_in < 1 || fan_out < 1) throw Error("xavier_uniform: fans must be >= 1");
  Tensor t = Tensor::zeros({fan_out, fan_in});
  double a = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  for (double& v : t.data) v = rng.uniform(-a, a);
  return t;
}

/// Named parameter tensors; iteration is deterministic (sorted by name).
class ParamStore {
 public:
  Tensor& create(const std::string& name, std::vector<std::size_t> shape) {
    auto [it, fresh] = params_.emplace(name, Tensor::zeros(std::move(shape)));
    if (!fresh) throw Error("duplicate parameter '" + name + "'");
    return it->second;
  }

  Tensor& at(const std::string& name) {
    auto it = params_.find(name);
    if (it == params_.end()) throw Error("unknown parameter '" + name + "'");
    return it->second;
  }
  const Tensor& at(const std::string& name) const {
    auto it = params_.find(name);
    if (it == params_.end()) throw Error("unknown parameter '" + name + "'");
    return it->second;
  }
  bool contains(const std::string& name) const { return params_.count(name) > 0; }

  std::map<std::string, Tensor>& tensors() { return params_; }
  const std::map<std::string, Tensor>& tensors() const { return params_; }

  void zero_grads() {
    for (auto& [name, t] : params_) t.zero_grad();
  }
  void scale_grads(double s) {
    for (auto& [name, t] : params_)
      if (t.grad_live())
        for (double& g : t.grad) g *= s;
  }

  std::size_t coordinate_count() const {
    std::size_t n = 0;
    for (const auto& [name, t] : params_) n += t.size();
    return n;
  }

 private:
  std::map<std::string, Tensor> params_;
};

/// theta <- theta - lr * grad for every parameter, then zero the grads.
/// Parameters never touched by any backward pass are treated as zero-grad,
/// but calling this before any backward pass at all is an error.
inline void sgd_step(ParamStore& params, double lr) {
  bool any_live = false;
  for (const auto& [name, t] : params.tensors()) any_live = any_live || t.grad_live();
  if (!any_live) throw NumError("sgd_step: gradients not populated");
  for (auto& [name, t] : params.tensors()) {
    if (!t.grad_live()) continue;
    for (std::size_t k = 0; k < t.data.size(); ++k) t.data[k] -= lr * t.grad[k];
    t.zero_grad();
  }
}

/// initial * decay^floor(batches_done / every)
inline double lr_schedule(double initial, double decay, std::size_t every,
                          std::size_t batches_done) {
  if (decay <= 0.0 || decay > 1.0) throw Error("lr_schedule: decay must be in (0,1]");
  if (every < 1) throw Error("lr_schedule: every must be >= 1");
  return initial * std::pow(decay, static_cast<double>(batches_done / every));
}

// ---------------------------------------------------------------------------
// Reverse-mode tape
// ---------------------------------------------------------------------------

/// A dynamic computation graph over vectors. Operations append nodes and
/// backward closures to a tape; backward() replays the tape in reverse,
/// accumulating into node grads and into the grads of any parameter tensors
/// the operations touched. One graph instance covers one forward/backward
/// pass and is then discarded.
class Graph {
 public:
  Graph() = default;
  Graph(const Graph&) = delete;
  Graph& operator=(const Graph&) = delete;

  class Var {
   public:
    Var() = default;
    const std::vector<double>& value() const { return g_->nodes_[i_].val; }
    const std::vector<double>& grad() const { return g_->nodes_[i_].grad; }
    std::size_t size() const { return value().size(); }
    double scalar() const {
      if (size() != 1) throw Error("Var::scalar on a non-scalar value");
      return value()[0];
    }

   private:
    friend class Graph;
    Var(Graph* g, std::size_t i) : g_(g), i_(i) {}
    Graph* g_ = nullptr;
    std::size_t i_ = 0;
  };

  Var input(std::vector<double> v) { return Var(this, make(std::move(v))); }

  Var zeros(std::size_t n) { return input(std::vector<double>(n, 0.0)); }

  /// Row lookup into a parameter matrix; gradients accumulate into that row.
  Var param_row(const Tensor& table, std::size_t row) {
    if (table.shape.size() != 2 || row >= table.rows())
      throw Error("param_row: row index out of range");
    std::size_t d = table.cols();
    std::vector<double> v(table.data.begin() + row * d, table.data.begin() + (row + 1) * d);
    Var out(this, make(std::move(v)));
    tape_.push_back([this, &table, row, d, o = out.i_]() {
      table.ensure_grad();
      const auto& go = nodes_[o].grad;
      for (std::size_t k = 0; k < d; ++k) table.grad[row * d + k] += go[k];
    });
    return out;
  }

  /// A 1-d parameter tensor as a graph value (used for bias additions).
  Var param_vec(const Tensor& t) {
    if (t.shape.size() != 1) throw Error("param_vec: tensor is not 1-d");
    Var out(this, make(t.data));
    tape_.push_back([this, &t, o = out.i_]() {
      t.ensure_grad();
      const auto& go = nodes_[o].grad;
      for (std::size_t k = 0; k < go.size(); ++k) t.grad[k] += go[k];
    });
    return out;
  }

  Var matvec(const Tensor& w, Var x) {
    if (w.shape.size() != 2 || w.cols() != x.size())
      throw Error("matvec: dimension mismatch");
    std::size_t r = w.rows(), c = w.cols();
    const auto& xv = nodes_[x.i_].val;
    std::vector<double> y(r, 0.0);
    for (std::size_t i = 0; i < r; ++i) {
      const double* row = w.data.data() + i * c;
      double acc = 0.0;
      for (std::size_t j = 0; j < c; ++j) acc += row[j] * xv[j];
      y[i] = acc;
    }
    Var out(this, make(std::move(y)));
    tape_.push_back([this, &w, xi = x.i_, o = out.i_, r, c]() {
      w.ensure_grad();
      const auto& go = nodes_[o].grad;
      const auto& xv = nodes_[xi].val;
      auto& gx = nodes_[xi].grad;
      for (std::size_t i = 0; i < r; ++i) {
        double gi = go[i];
        if (gi == 0.0) continue;
        const double* row = w.data.data() + i * c;
        double* wg = w.grad.data() + i * c;
        for (std::size_t j = 0; j < c; ++j) {
          wg[j] += gi * xv[j];
          gx[j] += gi * row[j];
        }
      }
    });
    return out;
  }

  Var add(Var a, Var b) {
    if (a.size() != b.size()) throw Error("add: dimension mismatch");
    std::vector<double> y(a.size());
    const auto& av = nodes_[a.i_].val;
    const auto& bv = nodes_[b.i_].val;
    for (std::size_t k = 0; k < y.size(); ++k) y[k] = av[k] + bv[k];
    Var out(this, make(std::move(y)));
    tape_.push_back([this, ai = a.i_, bi = b.i_, o = out.i_]() {
      const auto& go = nodes_[o].grad;
      auto& ga = nodes_[ai].grad;
      auto& gb = nodes_[bi].grad;
      for (std::size_t k = 0; k < go.size(); ++k) {
        ga[k] += go[k];
        gb[k] += go[k];
      }
    });
    return out;
  }

  /// Elementwise sum of same-length vectors (empty list is not allowed).
  Var sum(const std::vector<Var>& vars) {
    if (vars.empty()) throw Error("sum: empty operand list");
    std::vector<double> y(vars[0].size(), 0.0);
    std::vector<std::size_t> idx;
    idx.reserve(vars.size());
    for (const Var& v : vars) {
      if (v.size() != y.size()) throw Error("sum: dimension mismatch");
      const auto& vv = nodes_[v.i_].val;
      for (std::size_t k = 0; k < y.size(); ++k) y[k] += vv[k];
      idx.push_back(v.i_);
    }
    Var out(this, make(std::move(y)));
    tape_.push_back([this, idx = std::move(idx), o = out.i_]() {
      const auto& go = nodes_[o].grad;
      for (std::size_t vi : idx) {
        auto& gv = nodes_[vi].grad;
        for (std::size_t k = 0; k < go.size(); ++k) gv[k] += go[k];
      }
    });
    return out;
  }

  Var mul(Var a, Var b) {
    if (a.size() != b.size()) throw Error("mul: dimension mismatch");
    std::vector<double> y(a.size());
    const auto& av = nodes_[a.i_].val;
    const auto& bv = nodes_[b.i_].val;
    for (std::size_t k = 0; k < y.size(); ++k) y[k] = av[k] * bv[k];
    Var out(this, make(std::move(y)));
    tape_.push_back([this, ai = a.i_, bi = b.i_, o = out.i_]() {
      const auto& go = nodes_[o].grad;
      const auto& av = nodes_[ai].val;
      const auto& bv = nodes_[bi].val;
      auto& ga = nodes_[ai].grad;
      auto& gb = nodes_[bi].grad;
      for (std::size_t k = 0; k < go.size(); ++k) {
        ga[k] += go[k] * bv[k];
        gb[k] += go[k] * av[k];
      }
    });
    return out;
  }

  Var scale(Var a, double s) {
    std::vector<double> y(a.size());
    const auto& av = nodes_[a.i_].val;
    for (std::size_t k = 0; k < y.size(); ++k) y[k] = s * av[k];
    Var out(this, make(std::move(y)));
    tape_.push_back([this, ai = a.i_, o = out.i_, s]() {
      const auto& go = nodes_[o].grad;
      auto& ga = nodes_[ai].grad;
      for (std::size_t k = 0; k < go.size(); ++k) ga[k] += s * go[k];
    });
    return out;
  }

  Var concat(const std::vector<Var>& vars) {
    std::vector<double> y;
    std::vector<std::size_t> idx, offs;
    for (const Var& v : vars) {
      idx.push_back(v.i_);
      offs.push_back(y.size());
      const auto& vv = nodes_[v.i_].val;
      y.insert(y.end(), vv.begin(), vv.end());
    }
    Var out(this, make(std::move(y)));
    tape_.push_back([this, idx = std::move(idx), offs = std::move(offs), o = out.i_]() {
      const auto& go = nodes_[o].grad;
      for (std::size_t v = 0; v < idx.size(); ++v) {
        auto& gv = nodes_[idx[v]].grad;
        for (std::size_t k = 0; k < gv.size(); ++k) gv[k] += go[offs[v] + k];
      }
    });
    return out;
  }

  Var sigmoid(Var a) {
    std::vector<double> y(a.size());
    const auto& av = nodes_[a.i_].val;
    for (std::size_t k = 0; k < y.size(); ++k) {
      double x = av[k];
      y[k] = x >= 0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
    }
    Var out(this, make(std::move(y)));
    tape_.push_back([this, ai = a.i_, o = out.i_]() {
      const auto& go = nodes_[o].grad;
      const auto& yv = nodes_[o].val;
      auto& ga = nodes_[ai].grad;
      for (std::size_t k = 0; k < go.size(); ++k) ga[k] += go[k] * yv[k] * (1.0 - yv[k]);
    });
    return out;
  }

  Var tanh(Var a) {
    std::vector<double> y(a.size());
    const auto& av = nodes_[a.i_].val;
    for (std::size_t k = 0; k < y.size(); ++k) y[k] = std::tanh(av[k]);
    Var out(this, make(std::move(y)));
    tape_.push_back([this, ai = a.i_, o = out.i_]() {
      const auto& go = nodes_[o].grad;
      const auto& yv = nodes_[o].val;
      auto& ga = nodes_[ai].grad;
      for (std::size_t k = 0; k < go.size(); ++k) ga[k] += go[k] * (1.0 - yv[k] * yv[k]);
    });
    return out;
  }

  /// Numerically stable softmax (max subtraction); sums to 1 within 1e-12.
  Var softmax(Var a) {
    if (a.size() == 0) throw Error("softmax: empty input");
    const auto& av = nodes_[a.i_].val;
    double m = av[0];
    for (double v : av) m = std::max(m, v);
    std::vector<double> y(a.size());
    double z = 0.0;
    for (std::size_t k = 0; k < y.size(); ++k) {
      y[k] = std::exp(av[k] - m);
      z += y[k];
    }
    for (double& v : y) v /= z;
    Var out(this, make(std::move(y)));
    tape_.push_back([this, ai = a.i_, o = out.i_]() {
      const auto& go = nodes_[o].grad;
      const auto& yv = nodes_[o].val;
      auto& ga = nodes_[ai].grad;
      double dot = 0.0;
      for (std::size_t k = 0; k < go.size(); ++k) dot += go[k] * yv[k];
      for (std::size_t k = 0; k < go.size(); ++k) ga[k] += yv[k] * (go[k] - dot);
    });
    return out;
  }

  /// Single element as a scalar.
  Var pick(Var a, std::size_t k) {
    if (k >= a.size()) throw Error("pick: index out of range");
    Var out(this, make({nodes_[a.i_].val[k]}));
    tape_.push_back([this, ai = a.i_, o = out.i_, k]() {
      nodes_[ai].grad[k] += nodes_[o].grad[0];
    });
    return out;
  }

  Var dot(Var a, Var b) {
    if (a.size() != b.size()) throw Error("dot: dimension mismatch");
    const auto& av = nodes_[a.i_].val;
    const auto& bv = nodes_[b.i_].val;
    double acc = 0.0;
    for (std::size_t k = 0; k < av.size(); ++k) acc += av[k] * bv[k];
    Var out(this, make({acc}));
    tape_.push_back([this, ai = a.i_, bi = b.i_, o = out.i_]() {
      double g = nodes_[o].grad[0];
      const auto& av = nodes_[ai].val;
      const auto& bv = nodes_[bi].val;
      auto& ga = nodes_[ai].grad;
      auto& gb = nodes_[bi].grad;
      for (std::size_t k = 0; k < av.size(); ++k) {
        ga[k] += g * bv[k];
        gb[k] += g * av[k];
      }
    });
    return out;
  }

  /// Vector scaled by a scalar graph value.
  Var scalar_mul(Var s, Var v) {
    if (s.size() != 1) throw Error("scalar_mul: scale operand is not scalar");
    double sv = nodes_[s.i_].val[0];
    std::vector<double> y(v.size());
    const auto& vv = nodes_[v.i_].val;
    for (std::size_t k = 0; k < y.size(); ++k) y[k] = sv * vv[k];
    Var out(this, make(std::move(y)));
    tape_.push_back([this, si = s.i_, vi = v.i_, o = out.i_]() {
      const auto& go = nodes_[o].grad;
      const auto& vv = nodes_[vi].val;
      double sv = nodes_[si].val[0];
      auto& gs = nodes_[si].grad;
      auto& gv = nodes_[vi].grad;
      for (std::size_t k = 0; k < go.size(); ++k) {
        gs[0] += go[k] * vv[k];
        gv[k] += go[k] * sv;
      }
    });
    return out;
  }

  /// Negative log-softmax probability of the gold class.
  Var cross_entropy(Var logits, std::size_t gold) {
    if (gold >= logits.size()) throw Error("cross_entropy: gold index out of range");
    const auto& lv = nodes_[logits.i_].val;
    double m = lv[0];
    for (double v : lv) m = std::max(m, v);
    double z = 0.0;
    for (double v : lv) z += std::exp(v - m);
    double loss = m + std::log(z) - lv[gold];
    Var out(this, make({loss}));
    tape_.push_back([this, li = logits.i_, o = out.i_, gold, m, z]() {
      double g = nodes_[o].grad[0];
      const auto& lv = nodes_[li].val;
      auto& gl = nodes_[li].grad;
      for (std::size_t k = 0; k < lv.size(); ++k) {
        double p = std::exp(lv[k] - m) / z;
        gl[k] += g * (p - (k == gold ? 1.0 : 0.0));
      }
    });
    return out;
  }

  /// Inverted dropout: entries zeroed with probability p at training time,
  /// survivors scaled by 1/(1-p); identity at inference or when p == 0.
  /// RNG draws are consumed only in the training branch.
  Var dropout(Var a, double p, Rng& rng, bool training) {
    if (p < 0.0 || p >= 1.0) throw Error("dropout: p must be in [0,1)");
    if (!training || p == 0.0) return a;
    std::vector<double> mask(a.size());
    double keep_scale = 1.0 / (1.0 - p);
    for (double& m : mask) m = rng.bernoulli(p) ? 0.0 : keep_scale;
    const auto& av = nodes_[a.i_].val;
    std::vector<double> y(a.size());
    for (std::size_t k = 0; k < y.size(); ++k) y[k] = av[k] * mask[k];
    Var out(this, make(std::move(y)));
    tape_.push_back([this, ai = a.i_, o = out.i_, mask = std::move(mask)]() {
      const auto& go = nodes_[o].grad;
      auto& ga = nodes_[ai].grad;
      for (std::size_t k = 0; k < go.size(); ++k) ga[k] += go[k] * mask[k];
    });
    return out;
  }

  /// Seeds d(root)=1 and replays the tape in reverse. root must be scalar.
  void backward(Var root) {
    if (root.size() != 1) throw Error("backward: root must be scalar");
    nodes_[root.i_].grad[0] = 1.0;
    for (auto it = tape_.rbegin(); it != tape_.rend(); ++it) (*it)();
  }

  std::size_t node_count() const { return nodes_.size(); }

 private:
  struct Node {
    std::vector<double> val;
    std::vector<double> grad;
  };

  std::size_t make(std::vector<double> v) {
    nodes_.push_back(Node{std::move(v), {}});
    nodes_.back().grad.assign(nodes_.back().val.size(), 0.0);
    return nodes_.size() - 1;
  }

  std::deque<Node> nodes_;
  std::vector<std::function<void()>> tape_;
};

using Var = Graph::Var;

// ---------------------------------------------------------------------------
// LSTM cell
// ---------------------------------------------------------------------------

/// Views of the twelve tensors of one LSTM cell (input, forget, output and
/// cell-candidate gates; W_* input weights, U_* recurrent weights, b_* biases).
struct LstmParams {
  const Tensor *w_i, *u_i, *b_i;
  const Tensor *w_f, *u_f, *b_f;
  const Tensor *w_o, *u_o, *b_o;
  const Tensor *w_g, *u_g, *b_g;
  std::size_t input_dim = 0, hidden_dim = 0;
};

namespace detail {
inline const char* kGateNames[4] = {"i", "f", "o", "g"};
}

/// Creates the cell's parameters under `prefix.` with Xavier-uniform weight
/// matrices and zero biases.
inline LstmParams lstm_create(ParamStore& store, const std::string& prefix, std::size_t input_dim,
                              std::size_t hidden_dim, Rng& rng) {
  for (const char* gate : detail::kGateNames) {
    store.create(prefix + ".W_" + gate, {hidden_dim, input_dim}).data =
        xavier_uniform(input_dim, hidden_dim, rng).data;
    store.create(prefix + ".U_" + gate, {hidden_dim, hidden_dim}).data =
        xavier_uniform(hidden_dim, hidden_dim, rng).data;
    store.create(prefix + ".b_" + gate, {hidden_dim});
  }
  LstmParams p;
  p.w_i = &store.at(prefix + ".W_i"); p.u_i = &store.at(prefix + ".U_i"); p.b_i = &store.at(prefix + ".b_i");
  p.w_f = &store.at(prefix + ".W_f"); p.u_f = &store.at(prefix + ".U_f"); p.b_f = &store.at(prefix + ".b_f");
  p.w_o = &store.at(prefix + ".W_o"); p.u_o = &store.at(prefix + ".U_o"); p.b_o = &store.at(prefix + ".b_o");
  p.w_g = &store.at(prefix + ".W_g"); p.u_g = &store.at(prefix + ".U_g"); p.b_g = &store.at(prefix + ".b_g");
  p.input_dim = input_dim;
  p.hidden_dim = hidden_dim;
  return p;
}

inline LstmParams lstm_view(const ParamStore& store, const std::string& prefix) {
  LstmParams p;
  p.w_i = &store.at(prefix + ".W_i"); p.u_i = &store.at(prefix + ".U_i"); p.b_i = &store.at(prefix + ".b_i");
  p.w_f = &store.at(prefix + ".W_f"); p.u_f = &store.at(prefix + ".U_f"); p.b_f = &store.at(prefix + ".b_f");
  p.w_o = &store.at(prefix + ".W_o"); p.u_o = &store.at(prefix + ".U_o"); p.b_o = &store.at(prefix + ".b_o");
  p.w_g = &store.at(prefix + ".W_g"); p.u_g = &store.at(prefix + ".U_g"); p.b_g = &store.at(prefix + ".b_g");
  p.input_dim = p.w_i->cols();
  p.hidden_dim = p.w_i->rows();
  return p;
}

/// Standard cell, no peepholes:
///   i=sig(Wx+Uh+b), f=sig(...), o=sig(...), g=tanh(...),
///   c = f*c_prev + i*g,  h = o*tanh(c)
inline std::pair<Var, Var> lstm_step(Graph& g, Var x, Var h_prev, Var c_prev,
                                     const LstmParams& p) {
  if (x.size() != p.input_dim || h_prev.size() != p.hidden_dim || c_prev.size() != p.hidden_dim)
    throw Error("lstm_step: dimension mismatch");
  auto gate = [&](const Tensor* w, const Tensor* u, const Tensor* b) {
    return g.add(g.add(g.matvec(*w, x), g.matvec(*u, h_prev)), g.param_vec(*b));
  };
  Var i = g.sigmoid(gate(p.w_i, p.u_i, p.b_i));
  Var f = g.sigmoid(gate(p.w_f, p.u_f, p.b_f));
  Var o = g.sigmoid(gate(p.w_o, p.u_o, p.b_o));
  Var cand = g.tanh(gate(p.w_g, p.u_g, p.b_g));
  Var c = g.add(g.mul(f, c_prev), g.mul(i, cand));
  Var h = g.mul(o, g.tanh(c));
  return {h, c};
}

// ---------------------------------------------------------------------------
// Gradient checking
// ---------------------------------------------------------------------------

/// Central-difference check of every parameter coordinate against the
/// analytic gradient. `f` must be a deterministic scalar computation that
/// runs its own forward and backward pass (dropout disabled). Returns the
/// maximum of |analytic-numeric| / max(1e-8, |analytic|+|numeric|).
template <class F>
double grad_check(F&& f, ParamStore& params, double eps) {
  params.zero_grads();
  double base = f();
  if (!std::isfinite(base)) throw NumError("grad_check: non-finite base value");

  std::map<std::string, std::vector<double>> analytic;
  for (const auto& [name, t] : params.tensors())
    analytic[name] = t.grad_live() ? t.grad : std::vector<double>(t.size(), 0.0);

  double max_rel = 0.0;
  for (auto& [name, t] : params.tensors()) {
    for (std::size_t k = 0; k < t.data.size(); ++k) {
      double orig = t.data[k];
      t.data[k] = orig + eps;
      double fp = f();
      t.data[k] = orig - eps;
      double fm = f();
      t.data[k] = orig;
      if (!std::isfinite(fp) || !std::isfinite(fm))
        throw NumError("grad_check: non-finite value while perturbing '" + name + "'");
      double numeric = (fp - fm) / (2.0 * eps);
      double a = analytic[name][k];
      double rel = std::abs(a - numeric) / std::max(1e-8, std::abs(a) + std::abs(numeric));
      max_rel = std::max(max_rel, rel);
    }
  }
  params.zero_grads();
  return max_rel;
}

}  // namespace morphtag
