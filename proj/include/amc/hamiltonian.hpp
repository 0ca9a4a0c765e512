#pragma once

#include "amc/fock.hpp"
#include "amc/integrals.hpp"

#include <ostream>

namespace amc {

/// Hermitian sparse matrix over the configuration basis.  Only the upper
/// triangle (row <= col) is stored; the lower triangle is implied by
/// conjugation.  Entries are sorted by (row, col) so matvec is deterministic.
struct SparseHamiltonian {
  int dimension = 0;
  struct Entry {
    int row;
    int col;
    Complex value;
  };
  std::vector<Entry> entries;

  ComplexMatrix dense() const;
};

/// Assembles H over the basis by applying the second-quantized terms
/// (one-body, intra-species two-body with their 1/2 prefactors, inter-species,
/// and the conversion pair scaled by 1/sqrt(2)) to every configuration via
/// bosonic ladder rules.  The result is Hermitian by construction, couples
/// conversion sectors p <-> p-1 only, and is block diagonal in p otherwise.
SparseHamiltonian assemble_hamiltonian(const ConfigurationBasis& basis,
                                       const IntegralTables& tables);

/// y = H x with Hermitian completion of the stored upper triangle.
CoefficientVector matvec(const SparseHamiltonian& H, const CoefficientVector& C);

/// Real part of <C|H|C> (exactly real for Hermitian storage).
double expectation(const SparseHamiltonian& H, const CoefficientVector& C);

/// Coordinate-format dump "row col re im", upper triangle, sorted.
void dump_coordinates(std::ostream& os, const SparseHamiltonian& H);

}  // namespace amc
