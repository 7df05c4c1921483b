#pragma once

#include "agassi/errors.hpp"
#include "agassi/experiments.hpp"
#include "agassi/ion_compiler.hpp"
#include "agassi/model.hpp"
#include "agassi/pauli.hpp"
#include "agassi/statevector.hpp"
#include "agassi/trotter.hpp"
#include "agassi/version.hpp"
