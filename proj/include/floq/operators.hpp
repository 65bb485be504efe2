#pragma once

#include <map>
#include <string>
#include <vector>

#include "floq/types.hpp"

namespace floq {

// n qubits, basis ordered with qubit 0 as the leftmost Kronecker factor and
// |1> before |0> on every qubit, so index 0 is |1...1>.
struct QubitRegister {
    int n_qubits = 1;

    explicit QubitRegister(int n);
    Index dim() const { return Index(1) << n_qubits; }
};

// Occupation n_j (1 = excited) of every qubit in basis state alpha.
std::vector<int> occupations(Index alpha, int n_qubits);

// Basis index of the state with the given occupations.
Index basis_index(const std::vector<int>& occ);

// Embedding of a single-qubit operator. label is one of I X Y Z + - n,
// where n is the number operator sigma+ sigma-. qubit is zero-based.
Mat pauli_matrix(char label, int qubit, const QubitRegister& reg);

// Tensor product of single-qubit labels, e.g. "ZX" or "n+".
Mat pauli_string(const std::string& labels);

using PauliDecomposition = std::map<std::string, cplx>;

// c_P = Tr(P^dagger A) / 2^n over all 4^n strings of I X Y Z.
PauliDecomposition pauli_decompose(const Mat& a, const QubitRegister& reg);

Mat pauli_reconstruct(const PauliDecomposition& c, const QubitRegister& reg);

double max_abs(const Mat& a);

bool is_hermitian(const Mat& a, double tol = 1e-12);

}  // namespace floq
