#pragma once

#include "chiralmag/branch.hpp"
#include "chiralmag/errors.hpp"
#include "chiralmag/field.hpp"
#include "chiralmag/field_io.hpp"
#include "chiralmag/flow.hpp"
#include "chiralmag/fourier.hpp"
#include "chiralmag/lattice.hpp"
#include "chiralmag/linear.hpp"
#include "chiralmag/parallel.hpp"
#include "chiralmag/stability.hpp"
#include "chiralmag/symmetry.hpp"
