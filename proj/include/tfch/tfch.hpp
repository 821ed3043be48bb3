#pragma once

#include "tfch/chmodel.hpp"
#include "tfch/config.hpp"
#include "tfch/csvio.hpp"
#include "tfch/diagnostics.hpp"
#include "tfch/errors.hpp"
#include "tfch/fft.hpp"
#include "tfch/field.hpp"
#include "tfch/fracops.hpp"
#include "tfch/gamma.hpp"
#include "tfch/gmres.hpp"
#include "tfch/grid.hpp"
#include "tfch/init.hpp"
#include "tfch/oracle.hpp"
#include "tfch/parallel.hpp"
#include "tfch/prng.hpp"
#include "tfch/runner.hpp"
#include "tfch/snapshot.hpp"
#include "tfch/soe.hpp"
#include "tfch/spectral.hpp"
#include "tfch/stepper.hpp"
