#pragma once

#include "cvsteer/analysis.hpp"
#include "cvsteer/hawking.hpp"
#include "cvsteer/rootfind.hpp"
#include "cvsteer/states.hpp"
#include "cvsteer/steering.hpp"
#include "cvsteer/symplectic.hpp"
#include "cvsteer/types.hpp"
