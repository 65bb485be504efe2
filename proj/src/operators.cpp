#include "floq/operators.hpp"

namespace floq {

QubitRegister::QubitRegister(int n) : n_qubits(n)
{
    if (n < 1 || n > 12)
        throw UsageError("QubitRegister: n_qubits must be in [1, 12], got " + std::to_string(n));
}

std::vector<int> occupations(Index alpha, int n_qubits)
{
    std::vector<int> occ(n_qubits);
    for (int j = 0; j < n_qubits; ++j)
        occ[j] = 1 - int((alpha >> (n_qubits - 1 - j)) & 1);
    return occ;
}

Index basis_index(const std::vector<int>& occ)
{
    Index a = 0;
    const int n = int(occ.size());
    for (int j = 0; j < n; ++j)
        if (occ[j] == 0)
            a |= Index(1) << (n - 1 - j);
    return a;
}

namespace {

Eigen::Matrix2cd single(char label)
{
    const cplx i(0.0, 1.0);
    Eigen::Matrix2cd m;
    // basis (|1>, |0>)
    switch (label) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    case '+': m << 0, 1, 0, 0; break;
    case '-': m << 0, 0, 1, 0; break;
    case 'n': m << 1, 0, 0, 0; break;
    default:
        throw UsageError(std::string("invalid Pauli label '") + label + "'");
    }
    return m;
}

Mat kron(const Mat& a, const Mat& b)
{
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index r = 0; r < a.rows(); ++r)
        for (Index c = 0; c < a.cols(); ++c)
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    return out;
}

}  // namespace

Mat pauli_matrix(char label, int qubit, const QubitRegister& reg)
{
    if (qubit < 0 || qubit >= reg.n_qubits)
        throw UsageError("qubit index " + std::to_string(qubit) + " out of range for "
                         + std::to_string(reg.n_qubits) + " qubits");
    std::string labels(reg.n_qubits, 'I');
    labels[qubit] = label;
    return pauli_string(labels);
}

Mat pauli_string(const std::string& labels)
{
    if (labels.empty())
        throw UsageError("empty Pauli string");
    Mat out = Mat::Identity(1, 1);
    for (char l : labels)
        out = kron(out, single(l));
    return out;
}

PauliDecomposition pauli_decompose(const Mat& a, const QubitRegister& reg)
{
    const Index d = reg.dim();
    if (a.rows() != d || a.cols() != d)
        throw UsageError("pauli_decompose: matrix is " + std::to_string(a.rows()) + "x"
                         + std::to_string(a.cols()) + ", register dimension "
                         + std::to_string(d));
    static const char letters[4] = {'I', 'X', 'Y', 'Z'};
    const int n = reg.n_qubits;
    PauliDecomposition out;
    std::string label(n, 'I');
    const Index total = Index(1) << (2 * n);
    for (Index code = 0; code < total; ++code) {
        for (int j = 0; j < n; ++j)
            label[j] = letters[(code >> (2 * (n - 1 - j))) & 3];
        // Pauli strings are monomial: each row has a single nonzero entry.
        cplx tr = 0.0;
        for (Index r = 0; r < d; ++r) {
            Index c = 0;
            cplx v = 1.0;
            for (int j = 0; j < n; ++j) {
                const int bit = int((r >> (n - 1 - j)) & 1);
                int cb = bit;
                switch (label[j]) {
                case 'I': break;
                case 'X': cb = 1 - bit; break;
                case 'Y': cb = 1 - bit; v *= (bit == 0) ? cplx(0, -1) : cplx(0, 1); break;
                case 'Z': v *= (bit == 0) ? 1.0 : -1.0; break;
                }
                c |= Index(cb) << (n - 1 - j);
            }
            // P(r, c) = v, so conj(P(r, c)) * A(r, c) contributes to Tr(P^dagger A)
            tr += std::conj(v) * a(r, c);
        }
        out[label] = tr / double(d);
    }
    return out;
}

Mat pauli_reconstruct(const PauliDecomposition& c, const QubitRegister& reg)
{
    Mat out = Mat::Zero(reg.dim(), reg.dim());
    for (const auto& [label, v] : c) {
        if (int(label.size()) != reg.n_qubits)
            throw UsageError("Pauli label '" + label + "' does not match register size");
        out += v * pauli_string(label);
    }
    return out;
}

double max_abs(const Mat& a)
{
    return a.size() ? a.cwiseAbs().maxCoeff() : 0.0;
}

bool is_hermitian(const Mat& a, double tol)
{
    return a.rows() == a.cols() && max_abs(a - a.adjoint()) < tol;
}

}  // namespace floq
