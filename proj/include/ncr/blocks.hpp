#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ncr/matrix.hpp"
#include "ncr/quiver.hpp"

namespace ncr {

// A copy of W(vertex) (or, for hom spaces, a column slot) inside a
// direct-sum ambient space.
struct Slot {
  std::size_t vertex;
  std::size_t copy;
  std::size_t offset;
  std::size_t size;
};

// What a basis matrix of a structured space stands for.
struct GeneratorLabel {
  std::optional<std::size_t> domain_slot;
  std::optional<std::size_t> codomain_slot;
  std::optional<Path> path;
  std::string description;
};

// Invertible "add map(x-copy) into y-copy" action on the domain, used by the
// saturation step; from/to are domain vertices.
template <Field F>
struct SlotTransfer {
  std::size_t from_vertex;
  std::size_t to_vertex;
  Matrix<F> map;
};

// Slot layout of a reduced matrix space. Domain slots are ordered by vertex
// then copy and partition [0, domain_dim); likewise for the codomain.
template <Field F>
struct BlockStructure {
  std::vector<Slot> domain;
  std::vector<Slot> codomain;
  std::vector<GeneratorLabel> generators;
  std::vector<SlotTransfer<F>> domain_transfers;

  std::size_t domain_dim() const { return total(domain); }
  std::size_t codomain_dim() const { return total(codomain); }

  // Layout of the d-th blow-up (Kronecker order: outer copy index k gives an
  // offset of k * dim). Copy indices become k * copies(x) + i. Generator
  // labels are dropped; transfers are kept since they act copy-wise.
  BlockStructure blown_up(std::size_t d) const {
    BlockStructure r;
    r.domain = blow(domain, d);
    r.codomain = blow(codomain, d);
    r.domain_transfers = domain_transfers;
    return r;
  }

  static std::size_t total(const std::vector<Slot>& slots) {
    std::size_t n = 0;
    for (const auto& s : slots) n += s.size;
    return n;
  }

 private:
  static std::vector<Slot> blow(const std::vector<Slot>& slots, std::size_t d) {
    const std::size_t dim = total(slots);
    std::vector<std::size_t> copies;
    for (const auto& s : slots) {
      if (s.vertex >= copies.size()) copies.resize(s.vertex + 1, 0);
      copies[s.vertex] = std::max(copies[s.vertex], s.copy + 1);
    }
    std::vector<Slot> out;
    for (std::size_t k = 0; k < d; ++k) {
      for (const auto& s : slots) {
        out.push_back(Slot{s.vertex, k * copies[s.vertex] + s.copy, k * dim + s.offset, s.size});
      }
    }
    return out;
  }
};

}  // namespace ncr
