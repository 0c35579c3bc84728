#pragma once

#include "vclab/border_lab.hpp"
#include "vclab/checks.hpp"
#include "vclab/constructible_set.hpp"
#include "vclab/epsilon.hpp"
#include "vclab/errors.hpp"
#include "vclab/fat_cantor.hpp"
#include "vclab/group.hpp"
#include "vclab/lazy_set.hpp"
#include "vclab/parallel.hpp"
#include "vclab/rational.hpp"
#include "vclab/rng.hpp"
#include "vclab/tame_pair.hpp"
#include "vclab/vc.hpp"
