#pragma once

#include "torus_ledger/circle.hpp"
#include "torus_ledger/error.hpp"
#include "torus_ledger/gabai_tubes.hpp"
#include "torus_ledger/interlacing.hpp"
#include "torus_ledger/json_io.hpp"
#include "torus_ledger/manifolds.hpp"
#include "torus_ledger/plmap.hpp"
#include "torus_ledger/rational.hpp"
