#pragma once

// Umbrella header: pair-partition combinatorics, exact moment polynomials,
// the deformed Fock-space operator engine, and the verification harness.

#include "qfock/fock.hpp"
#include "qfock/pair_partition.hpp"
#include "qfock/poly.hpp"
#include "qfock/pset.hpp"
#include "qfock/rational.hpp"
#include "qfock/sign_sequence.hpp"
#include "qfock/spectral.hpp"
#include "qfock/verify.hpp"
