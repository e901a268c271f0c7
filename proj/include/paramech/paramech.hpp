#pragma once

#include "audit.hpp"
#include "errors.hpp"
#include "forms.hpp"
#include "hamiltonian.hpp"
#include "hyperdual.hpp"
#include "integrators.hpp"
#include "lagrangian.hpp"
#include "linalg.hpp"
#include "polynomial.hpp"
#include "random.hpp"
#include "scalar.hpp"
#include "scalar_field.hpp"
#include "scenario.hpp"
#include "split_quaternion.hpp"
#include "structures.hpp"
#include "trajectory_io.hpp"
