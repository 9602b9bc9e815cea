#pragma once

#include "addcomb/constructions.hpp"
#include "addcomb/convolution.hpp"
#include "addcomb/energy.hpp"
#include "addcomb/group.hpp"
#include "addcomb/quantities.hpp"
#include "addcomb/rational.hpp"
#include "addcomb/report.hpp"
#include "addcomb/rng.hpp"
#include "addcomb/serialize.hpp"
#include "addcomb/set.hpp"
#include "addcomb/verifier.hpp"
