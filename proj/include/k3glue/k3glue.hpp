#pragma once

#include "k3glue/integer.hpp"
#include "k3glue/matrix.hpp"
#include "k3glue/polynomial.hpp"
#include "k3glue/real_roots.hpp"
#include "k3glue/linalg.hpp"
#include "k3glue/factor.hpp"
#include "k3glue/lattice.hpp"
#include "k3glue/cyclotomic.hpp"
#include "k3glue/gluing.hpp"
#include "k3glue/k3_certify.hpp"
#include "k3glue/salem_traces.hpp"
#include "k3glue/lattice_io.hpp"
