#pragma once

#include "qcp/bundles.hpp"
#include "qcp/cocycle.hpp"
#include "qcp/coordring.hpp"
#include "qcp/dolbeault.hpp"
#include "qcp/gtrep.hpp"
#include "qcp/linalg.hpp"
#include "qcp/qarith.hpp"
#include "qcp/scalar.hpp"
#include "qcp/sparse.hpp"
