#pragma once

#include "cobed/analytic.hpp"
#include "cobed/basis.hpp"
#include "cobed/coboson.hpp"
#include "cobed/eigensolver.hpp"
#include "cobed/hamiltonian.hpp"
#include "cobed/lattice.hpp"
#include "cobed/observables.hpp"
#include "cobed/sparse_matrix.hpp"
#include "cobed/state.hpp"
