#pragma once

#include "optokerr/bostructure.hpp"
#include "optokerr/errors.hpp"
#include "optokerr/params.hpp"
#include "optokerr/params_io.hpp"
#include "optokerr/presets.hpp"
#include "optokerr/qnd.hpp"
#include "optokerr/spectrum.hpp"
#include "optokerr/steadystate.hpp"
