#include "hyplns/tape.hpp"

#include <cmath>
#include <memory>

#include "hyplns/errors.hpp"

namespace hyplns {

Activation activation_from_string(const std::string& name) {
  if (name == "identity") return Activation::Identity;
  if (name == "relu") return Activation::ReLU;
  if (name == "tanh") return Activation::Tanh;
  if (name == "softplus") return Activation::Softplus;
  throw ParameterError("unknown activation '" + name + "'");
}

Tensor& Tape::grad_buf(NodeId id) {
  Node& n = nodes_[id];
  if (n.grad.empty()) n.grad = Tensor(n.value.rows(), n.value.cols());
  return n.grad;
}

void Tape::mark(NodeId id, std::function<void()> back, std::initializer_list<NodeId> parents) {
  bool needs = false;
  for (NodeId p : parents) needs = needs || nodes_[p].needs_grad;
  nodes_[id].needs_grad = needs;
  if (needs) nodes_[id].back = std::move(back);
}

Tape::NodeId Tape::matmul(NodeId a, NodeId b) {
  const Tensor& A = nodes_[a].value;
  const Tensor& B = nodes_[b].value;
  if (A.cols() != B.rows()) throw DimensionError("matmul: inner dimensions differ");
  Tensor C(A.rows(), B.cols());
  const std::int64_t m = A.rows(), k = A.cols(), n = B.cols();
  for (std::int64_t i = 0; i < m; ++i) {
    double* crow = C.data() + i * n;
    const double* arow = A.data() + i * k;
    for (std::int64_t p = 0; p < k; ++p) {
      const double av = arow[p];
      if (av == 0.0) continue;
      const double* brow = B.data() + p * n;
      for (std::int64_t j = 0; j < n; ++j) crow[j] += av * brow[j];
    }
  }
  const NodeId id = push(std::move(C), false);
  mark(id, [this, id, a, b] {
    const Tensor& dC = nodes_[id].grad;
    const Tensor& A2 = nodes_[a].value;
    const Tensor& B2 = nodes_[b].value;
    const std::int64_t m2 = A2.rows(), k2 = A2.cols(), n2 = B2.cols();
    if (wants(a)) {  // dA += dC * B^T
      Tensor& dA = grad_buf(a);
      for (std::int64_t i = 0; i < m2; ++i)
        for (std::int64_t p = 0; p < k2; ++p) {
          double acc = 0.0;
          const double* dcrow = dC.data() + i * n2;
          const double* brow = B2.data() + p * n2;
          for (std::int64_t j = 0; j < n2; ++j) acc += dcrow[j] * brow[j];
          dA.at(i, p) += acc;
        }
    }
    if (wants(b)) {  // dB += A^T * dC
      Tensor& dB = grad_buf(b);
      for (std::int64_t p = 0; p < k2; ++p)
        for (std::int64_t i = 0; i < m2; ++i) {
          const double av = A2.at(i, p);
          if (av == 0.0) continue;
          const double* dcrow = dC.data() + i * n2;
          double* dbrow = dB.data() + p * n2;
          for (std::int64_t j = 0; j < n2; ++j) dbrow[j] += av * dcrow[j];
        }
    }
  }, {a, b});
  return id;
}

Tape::NodeId Tape::add(NodeId a, NodeId b) {
  const Tensor& A = nodes_[a].value;
  const Tensor& B = nodes_[b].value;
  if (!A.same_shape(B)) throw DimensionError("add: shapes differ");
  Tensor C = A;
  for (std::int64_t i = 0; i < C.size(); ++i) C[i] += B[i];
  const NodeId id = push(std::move(C), false);
  mark(id, [this, id, a, b] {
    const Tensor& dC = nodes_[id].grad;
    if (wants(a)) {
      Tensor& dA = grad_buf(a);
      for (std::int64_t i = 0; i < dC.size(); ++i) dA[i] += dC[i];
    }
    if (wants(b)) {
      Tensor& dB = grad_buf(b);
      for (std::int64_t i = 0; i < dC.size(); ++i) dB[i] += dC[i];
    }
  }, {a, b});
  return id;
}

Tape::NodeId Tape::add_rowvec(NodeId a, NodeId bias) {
  const Tensor& A = nodes_[a].value;
  const Tensor& B = nodes_[bias].value;
  if (B.rows() != 1 || B.cols() != A.cols())
    throw DimensionError("add_rowvec: bias must be [1 x cols]");
  Tensor C = A;
  for (std::int64_t r = 0; r < A.rows(); ++r)
    for (std::int64_t c = 0; c < A.cols(); ++c) C.at(r, c) += B[c];
  const NodeId id = push(std::move(C), false);
  mark(id, [this, id, a, bias] {
    const Tensor& dC = nodes_[id].grad;
    if (wants(a)) {
      Tensor& dA = grad_buf(a);
      for (std::int64_t i = 0; i < dC.size(); ++i) dA[i] += dC[i];
    }
    if (wants(bias)) {
      Tensor& dB = grad_buf(bias);
      for (std::int64_t r = 0; r < dC.rows(); ++r)
        for (std::int64_t c = 0; c < dC.cols(); ++c) dB[c] += dC.at(r, c);
    }
  }, {a, bias});
  return id;
}

Tape::NodeId Tape::sub(NodeId a, NodeId b) {
  const Tensor& A = nodes_[a].value;
  const Tensor& B = nodes_[b].value;
  if (!A.same_shape(B)) throw DimensionError("sub: shapes differ");
  Tensor C = A;
  for (std::int64_t i = 0; i < C.size(); ++i) C[i] -= B[i];
  const NodeId id = push(std::move(C), false);
  mark(id, [this, id, a, b] {
    const Tensor& dC = nodes_[id].grad;
    if (wants(a)) {
      Tensor& dA = grad_buf(a);
      for (std::int64_t i = 0; i < dC.size(); ++i) dA[i] += dC[i];
    }
    if (wants(b)) {
      Tensor& dB = grad_buf(b);
      for (std::int64_t i = 0; i < dC.size(); ++i) dB[i] -= dC[i];
    }
  }, {a, b});
  return id;
}

Tape::NodeId Tape::mul(NodeId a, NodeId b) {
  const Tensor& A = nodes_[a].value;
  const Tensor& B = nodes_[b].value;
  if (!A.same_shape(B)) throw DimensionError("mul: shapes differ");
  Tensor C = A;
  for (std::int64_t i = 0; i < C.size(); ++i) C[i] *= B[i];
  const NodeId id = push(std::move(C), false);
  mark(id, [this, id, a, b] {
    const Tensor& dC = nodes_[id].grad;
    const Tensor& A2 = nodes_[a].value;
    const Tensor& B2 = nodes_[b].value;
    if (wants(a)) {
      Tensor& dA = grad_buf(a);
      for (std::int64_t i = 0; i < dC.size(); ++i) dA[i] += dC[i] * B2[i];
    }
    if (wants(b)) {
      Tensor& dB = grad_buf(b);
      for (std::int64_t i = 0; i < dC.size(); ++i) dB[i] += dC[i] * A2[i];
    }
  }, {a, b});
  return id;
}

Tape::NodeId Tape::div(NodeId a, NodeId b) {
  const Tensor& A = nodes_[a].value;
  const Tensor& B = nodes_[b].value;
  if (!A.same_shape(B)) throw DimensionError("div: shapes differ");
  Tensor C = A;
  for (std::int64_t i = 0; i < C.size(); ++i) C[i] /= B[i];
  const NodeId id = push(std::move(C), false);
  mark(id, [this, id, a, b] {
    const Tensor& dC = nodes_[id].grad;
    const Tensor& A2 = nodes_[a].value;
    const Tensor& B2 = nodes_[b].value;
    if (wants(a)) {
      Tensor& dA = grad_buf(a);
      for (std::int64_t i = 0; i < dC.size(); ++i) dA[i] += dC[i] / B2[i];
    }
    if (wants(b)) {
      Tensor& dB = grad_buf(b);
      for (std::int64_t i = 0; i < dC.size(); ++i)
        dB[i] -= dC[i] * A2[i] / (B2[i] * B2[i]);
    }
  }, {a, b});
  return id;
}

Tape::NodeId Tape::minimum(NodeId a, NodeId b) {
  const Tensor& A = nodes_[a].value;
  const Tensor& B = nodes_[b].value;
  if (!A.same_shape(B)) throw DimensionError("minimum: shapes differ");
  Tensor C = A;
  for (std::int64_t i = 0; i < C.size(); ++i) C[i] = std::min(A[i], B[i]);
  const NodeId id = push(std::move(C), false);
  mark(id, [this, id, a, b] {
    const Tensor& dC = nodes_[id].grad;
    const Tensor& A2 = nodes_[a].value;
    const Tensor& B2 = nodes_[b].value;
    for (std::int64_t i = 0; i < dC.size(); ++i) {
      if (A2[i] <= B2[i]) {
        if (wants(a)) grad_buf(a)[i] += dC[i];
      } else if (wants(b)) {
        grad_buf(b)[i] += dC[i];
      }
    }
  }, {a, b});
  return id;
}

Tape::NodeId Tape::concat_cols(const std::vector<NodeId>& parts) {
  if (parts.empty()) throw DimensionError("concat_cols: no parts");
  const std::int64_t rows = nodes_[parts[0]].value.rows();
  std::int64_t cols = 0;
  for (NodeId p : parts) {
    if (nodes_[p].value.rows() != rows) throw DimensionError("concat_cols: row counts differ");
    cols += nodes_[p].value.cols();
  }
  Tensor C(rows, cols);
  std::int64_t offset = 0;
  for (NodeId p : parts) {
    const Tensor& P = nodes_[p].value;
    for (std::int64_t r = 0; r < rows; ++r)
      for (std::int64_t c = 0; c < P.cols(); ++c) C.at(r, offset + c) = P.at(r, c);
    offset += P.cols();
  }
  const NodeId id = push(std::move(C), false);
  std::vector<NodeId> parents = parts;
  bool needs = false;
  for (NodeId p : parents) needs = needs || nodes_[p].needs_grad;
  nodes_[id].needs_grad = needs;
  if (needs) {
    nodes_[id].back = [this, id, parents] {
      const Tensor& dC = nodes_[id].grad;
      std::int64_t off = 0;
      for (NodeId p : parents) {
        const std::int64_t pc = nodes_[p].value.cols();
        if (wants(p)) {
          Tensor& dP = grad_buf(p);
          for (std::int64_t r = 0; r < dC.rows(); ++r)
            for (std::int64_t c = 0; c < pc; ++c) dP.at(r, c) += dC.at(r, off + c);
        }
        off += pc;
      }
    };
  }
  return id;
}

Tape::NodeId Tape::gather_rows(NodeId a, std::vector<std::int32_t> indices) {
  const Tensor& A = nodes_[a].value;
  Tensor C(static_cast<std::int64_t>(indices.size()), A.cols());
  for (std::size_t r = 0; r < indices.size(); ++r) {
    if (indices[r] < 0 || indices[r] >= A.rows())
      throw DimensionError("gather_rows: index out of range");
    for (std::int64_t c = 0; c < A.cols(); ++c) C.at(r, c) = A.at(indices[r], c);
  }
  const NodeId id = push(std::move(C), false);
  auto idx = std::make_shared<std::vector<std::int32_t>>(std::move(indices));
  mark(id, [this, id, a, idx] {
    if (!wants(a)) return;
    const Tensor& dC = nodes_[id].grad;
    Tensor& dA = grad_buf(a);
    for (std::size_t r = 0; r < idx->size(); ++r)
      for (std::int64_t c = 0; c < dC.cols(); ++c) dA.at((*idx)[r], c) += dC.at(r, c);
  }, {a});
  return id;
}

Tape::NodeId Tape::segment_sum(NodeId a, std::vector<std::int32_t> segments,
                               std::int64_t num_segments) {
  const Tensor& A = nodes_[a].value;
  if (static_cast<std::int64_t>(segments.size()) != A.rows())
    throw DimensionError("segment_sum: one segment per row required");
  Tensor C(num_segments, A.cols());
  for (std::size_t r = 0; r < segments.size(); ++r) {
    if (segments[r] < 0 || segments[r] >= num_segments)
      throw DimensionError("segment_sum: segment out of range");
    for (std::int64_t c = 0; c < A.cols(); ++c) C.at(segments[r], c) += A.at(r, c);
  }
  const NodeId id = push(std::move(C), false);
  auto seg = std::make_shared<std::vector<std::int32_t>>(std::move(segments));
  mark(id, [this, id, a, seg] {
    if (!wants(a)) return;
    const Tensor& dC = nodes_[id].grad;
    Tensor& dA = grad_buf(a);
    for (std::size_t r = 0; r < seg->size(); ++r)
      for (std::int64_t c = 0; c < dC.cols(); ++c) dA.at(r, c) += dC.at((*seg)[r], c);
  }, {a});
  return id;
}

Tape::NodeId Tape::mean_rows(NodeId a) {
  const Tensor& A = nodes_[a].value;
  if (A.rows() == 0) throw DimensionError("mean_rows: empty tensor");
  Tensor C(1, A.cols());
  for (std::int64_t r = 0; r < A.rows(); ++r)
    for (std::int64_t c = 0; c < A.cols(); ++c) C[c] += A.at(r, c);
  for (std::int64_t c = 0; c < A.cols(); ++c) C[c] /= static_cast<double>(A.rows());
  const NodeId id = push(std::move(C), false);
  mark(id, [this, id, a] {
    if (!wants(a)) return;
    const Tensor& dC = nodes_[id].grad;
    Tensor& dA = grad_buf(a);
    const double inv = 1.0 / static_cast<double>(dA.rows());
    for (std::int64_t r = 0; r < dA.rows(); ++r)
      for (std::int64_t c = 0; c < dA.cols(); ++c) dA.at(r, c) += dC[c] * inv;
  }, {a});
  return id;
}

Tape::NodeId Tape::activation(NodeId a, Activation act) {
  if (act == Activation::Identity) return a;
  const Tensor& A = nodes_[a].value;
  Tensor C = A;
  switch (act) {
    case Activation::ReLU:
      for (std::int64_t i = 0; i < C.size(); ++i) C[i] = C[i] > 0.0 ? C[i] : 0.0;
      break;
    case Activation::Tanh:
      for (std::int64_t i = 0; i < C.size(); ++i) C[i] = std::tanh(C[i]);
      break;
    case Activation::Softplus:
      for (std::int64_t i = 0; i < C.size(); ++i)
        C[i] = C[i] > 30.0 ? C[i] : std::log1p(std::exp(C[i]));
      break;
    case Activation::Identity:
      break;
  }
  const NodeId id = push(std::move(C), false);
  mark(id, [this, id, a, act] {
    if (!wants(a)) return;
    const Tensor& dC = nodes_[id].grad;
    const Tensor& X = nodes_[a].value;
    const Tensor& Y = nodes_[id].value;
    Tensor& dA = grad_buf(a);
    switch (act) {
      case Activation::ReLU:
        for (std::int64_t i = 0; i < dC.size(); ++i)
          if (X[i] > 0.0) dA[i] += dC[i];
        break;
      case Activation::Tanh:
        for (std::int64_t i = 0; i < dC.size(); ++i) dA[i] += dC[i] * (1.0 - Y[i] * Y[i]);
        break;
      case Activation::Softplus:
        for (std::int64_t i = 0; i < dC.size(); ++i)
          dA[i] += dC[i] / (1.0 + std::exp(-X[i]));
        break;
      case Activation::Identity:
        break;
    }
  }, {a});
  return id;
}

Tape::NodeId Tape::exp_(NodeId a) {
  Tensor C = nodes_[a].value;
  for (std::int64_t i = 0; i < C.size(); ++i) C[i] = std::exp(C[i]);
  const NodeId id = push(std::move(C), false);
  mark(id, [this, id, a] {
    if (!wants(a)) return;
    const Tensor& dC = nodes_[id].grad;
    const Tensor& Y = nodes_[id].value;
    Tensor& dA = grad_buf(a);
    for (std::int64_t i = 0; i < dC.size(); ++i) dA[i] += dC[i] * Y[i];
  }, {a});
  return id;
}

Tape::NodeId Tape::log_(NodeId a) {
  Tensor C = nodes_[a].value;
  for (std::int64_t i = 0; i < C.size(); ++i) C[i] = std::log(C[i]);
  const NodeId id = push(std::move(C), false);
  mark(id, [this, id, a] {
    if (!wants(a)) return;
    const Tensor& dC = nodes_[id].grad;
    const Tensor& X = nodes_[a].value;
    Tensor& dA = grad_buf(a);
    for (std::int64_t i = 0; i < dC.size(); ++i) dA[i] += dC[i] / X[i];
  }, {a});
  return id;
}

Tape::NodeId Tape::square(NodeId a) {
  Tensor C = nodes_[a].value;
  for (std::int64_t i = 0; i < C.size(); ++i) C[i] *= C[i];
  const NodeId id = push(std::move(C), false);
  mark(id, [this, id, a] {
    if (!wants(a)) return;
    const Tensor& dC = nodes_[id].grad;
    const Tensor& X = nodes_[a].value;
    Tensor& dA = grad_buf(a);
    for (std::int64_t i = 0; i < dC.size(); ++i) dA[i] += dC[i] * 2.0 * X[i];
  }, {a});
  return id;
}

Tape::NodeId Tape::clamp(NodeId a, double lo, double hi) {
  Tensor C = nodes_[a].value;
  for (std::int64_t i = 0; i < C.size(); ++i) C[i] = std::min(hi, std::max(lo, C[i]));
  const NodeId id = push(std::move(C), false);
  mark(id, [this, id, a, lo, hi] {
    if (!wants(a)) return;
    const Tensor& dC = nodes_[id].grad;
    const Tensor& X = nodes_[a].value;
    Tensor& dA = grad_buf(a);
    for (std::int64_t i = 0; i < dC.size(); ++i)
      if (X[i] > lo && X[i] < hi) dA[i] += dC[i];
  }, {a});
  return id;
}

Tape::NodeId Tape::scale(NodeId a, double factor) {
  Tensor C = nodes_[a].value;
  for (std::int64_t i = 0; i < C.size(); ++i) C[i] *= factor;
  const NodeId id = push(std::move(C), false);
  mark(id, [this, id, a, factor] {
    if (!wants(a)) return;
    const Tensor& dC = nodes_[id].grad;
    Tensor& dA = grad_buf(a);
    for (std::int64_t i = 0; i < dC.size(); ++i) dA[i] += dC[i] * factor;
  }, {a});
  return id;
}

Tape::NodeId Tape::shift(NodeId a, double offset) {
  Tensor C = nodes_[a].value;
  for (std::int64_t i = 0; i < C.size(); ++i) C[i] += offset;
  const NodeId id = push(std::move(C), false);
  mark(id, [this, id, a] {
    if (!wants(a)) return;
    const Tensor& dC = nodes_[id].grad;
    Tensor& dA = grad_buf(a);
    for (std::int64_t i = 0; i < dC.size(); ++i) dA[i] += dC[i];
  }, {a});
  return id;
}

void Tape::backward(NodeId loss) {
  if (swept_) throw StateError("backward() already ran on this tape");
  if (nodes_[loss].value.size() != 1) throw StateError("backward() needs a scalar loss");
  if (!nodes_[loss].needs_grad)
    throw StateError("loss does not depend on any differentiable leaf");
  swept_ = true;
  grad_buf(loss)[0] = 1.0;
  for (NodeId id = loss; id >= 0; --id) {
    Node& n = nodes_[id];
    if (n.back && !n.grad.empty()) n.back();
  }
}

}  // namespace hyplns
