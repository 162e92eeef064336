#pragma once

#include "fpu2d/common.hpp"
#include "fpu2d/potential.hpp"
#include "fpu2d/lattice.hpp"
#include "fpu2d/taylor.hpp"
#include "fpu2d/kdv.hpp"
#include "fpu2d/grid.hpp"
#include "fpu2d/fft.hpp"
#include "fpu2d/spectral.hpp"
#include "fpu2d/profile.hpp"
#include "fpu2d/operators.hpp"
#include "fpu2d/linear_solve.hpp"
#include "fpu2d/assumptions.hpp"
#include "fpu2d/solver.hpp"
#include "fpu2d/dynamics.hpp"
#include "fpu2d/verification.hpp"
#include "fpu2d/io/config.hpp"
#include "fpu2d/io/csv.hpp"
#include "fpu2d/io/svg.hpp"
#include "fpu2d/io/commands.hpp"
