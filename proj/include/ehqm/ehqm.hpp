#pragma once

#include "ehqm/config.hpp"
#include "ehqm/error_model.hpp"
#include "ehqm/holonomic_map.hpp"
#include "ehqm/lambda_core.hpp"
#include "ehqm/oracle.hpp"
#include "ehqm/reproduce.hpp"
#include "ehqm/spin_bath.hpp"
#include "ehqm/sweep.hpp"
#include "ehqm/validation.hpp"
