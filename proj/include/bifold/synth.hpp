#pragma once

#include <vector>

#include "bifold/records.hpp"

// Deterministic synthetic demonstration corpus: flat cloth grids folded,
// shifted or corrupted by simple parametric motions. Used by the bundled
// corpus generator and the end-to-end tests.
namespace bifold::synth {

// Six sequences: a bimanual fold, a shirt-sleeve fold, a refinement, a
// single-arm fold, a diverging mesh and a single-arm fold right-to-left.
std::vector<SequenceRecord> demo_corpus();

}  // namespace bifold::synth
