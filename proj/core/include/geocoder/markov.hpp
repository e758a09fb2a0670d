#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "geocoder/boundary.hpp"

namespace geocoder {

enum class WitnessKind { A, B, C, None };
const char* to_string(WitnessKind k);

// U_i^-1 A_i equals the point `kind`_j, or kind == None.
struct MarkovWitness {
    int i = 0;
    int j = 0;
    WitnessKind kind = WitnessKind::None;
    double error = 0;
};

std::vector<MarkovWitness> markov_condition(const Surface& s, const Partition& A, const CycleReport& report);
bool all_witnessed(const std::vector<MarkovWitness>& w);

// R_{i,k}, k = 1..3, stored at rects[3(i-1) + k-1].
struct FinePartition {
    std::vector<Rect> rects;
    std::vector<bool> c_first;   // per strip: C_i in (A_i, B_i]
    std::vector<int> degenerate;  // strips whose middle rectangle has zero width
    const Rect& at(int i, int k) const { return rects[3 * (i - 1) + (k - 1)]; }
};

FinePartition fine_partition(const Surface& s, const Partition& A, const Attractor& attr);

struct TransitionMatrix {
    int size = 0;                   // 3n
    std::vector<std::uint8_t> m;    // row-major
    std::vector<int> strip;         // amalgamation: state -> i
    std::vector<int> piece;         // state -> k
    std::vector<bool> active;       // false for zero-width rectangles
    double area_threshold = 1e-9;

    bool at(int a, int b) const { return m[static_cast<std::size_t>(a) * size + b] != 0; }
    std::string name(int a) const;
};

// The image of R_{i,k} under T_i.
Rect image(const Surface& s, const Rect& r);

// Throws NotMarkov naming the first non-transversal intersection.
TransitionMatrix transition_matrix(const Surface& s, const FinePartition& fine);

double perron_eigenvalue(const TransitionMatrix& tm, int max_iter = 10000, double tol = 1e-13);

struct SoficEdge {
    int from = 0;
    int to = 0;
    int label = 0;
};

// Edge i_k -> j_l carries sigma(j), the arithmetic symbol emitted on entering R_{j,l}.
struct SoficGraph {
    int genus = 0;
    std::vector<std::string> nodes;
    std::vector<int> node_label;
    std::vector<SoficEdge> edges;
};

SoficGraph sofic_presentation(const Surface& s, const TransitionMatrix& tm);
// True when the periodic label sequence ...ppp... is read by some bi-infinite path.
bool accepts_periodic(const SoficGraph& g, const std::vector<int>& word);
std::string to_dot(const SoficGraph& g);

}  // namespace geocoder
