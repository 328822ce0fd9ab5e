#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hyplns/tensor.hpp"

namespace hyplns {

enum class Activation { Identity, ReLU, Tanh, Softplus };

Activation activation_from_string(const std::string& name);

// Reverse-mode tape over dense tensors. A tape records one forward pass; the
// graph is rebuilt per step and freed with the tape. Node ids are indices
// into the creation order, which is already a topological order.
class Tape {
 public:
  using NodeId = std::int32_t;

  NodeId constant(Tensor value) { return push(std::move(value), false); }
  NodeId leaf(Tensor value) { return push(std::move(value), true); }

  const Tensor& value(NodeId id) const { return nodes_[id].value; }
  const Tensor& grad(NodeId id) const { return nodes_[id].grad; }
  std::size_t size() const { return nodes_.size(); }

  // Matrix ops.
  NodeId matmul(NodeId a, NodeId b);
  NodeId add(NodeId a, NodeId b);              // same shape
  NodeId add_rowvec(NodeId a, NodeId bias);    // bias is [1 x c]
  NodeId sub(NodeId a, NodeId b);
  NodeId mul(NodeId a, NodeId b);              // elementwise
  NodeId div(NodeId a, NodeId b);              // elementwise
  NodeId minimum(NodeId a, NodeId b);          // elementwise; ties take a
  NodeId concat_cols(const std::vector<NodeId>& parts);
  NodeId gather_rows(NodeId a, std::vector<std::int32_t> indices);
  NodeId segment_sum(NodeId a, std::vector<std::int32_t> segments, std::int64_t num_segments);
  NodeId mean_rows(NodeId a);                  // [r x c] -> [1 x c]

  // Elementwise maps.
  NodeId activation(NodeId a, Activation act);
  NodeId relu(NodeId a) { return activation(a, Activation::ReLU); }
  NodeId tanh_(NodeId a) { return activation(a, Activation::Tanh); }
  NodeId softplus(NodeId a) { return activation(a, Activation::Softplus); }
  NodeId exp_(NodeId a);
  NodeId log_(NodeId a);
  NodeId square(NodeId a);
  NodeId clamp(NodeId a, double lo, double hi);  // zero gradient outside [lo, hi]
  NodeId scale(NodeId a, double factor);
  NodeId shift(NodeId a, double offset);
  NodeId neg(NodeId a) { return scale(a, -1.0); }

  // Seeds d(loss)/d(loss)=1 at a scalar node and sweeps the tape backwards.
  // Throws StateError if the node is not scalar or backward already ran.
  void backward(NodeId loss);

 private:
  struct Node {
    Tensor value;
    Tensor grad;
    bool needs_grad = false;
    std::function<void()> back;
  };

  NodeId push(Tensor value, bool needs_grad) {
    nodes_.push_back({std::move(value), Tensor{}, needs_grad, nullptr});
    return static_cast<NodeId>(nodes_.size() - 1);
  }
  Tensor& grad_buf(NodeId id);
  bool wants(NodeId id) const { return nodes_[id].needs_grad; }
  void mark(NodeId id, std::function<void()> back, std::initializer_list<NodeId> parents);

  std::vector<Node> nodes_;
  bool swept_ = false;
};

}  // namespace hyplns
