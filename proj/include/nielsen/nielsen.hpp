#pragma once

#include "nielsen/catalog.hpp"
#include "nielsen/classes.hpp"
#include "nielsen/covering.hpp"
#include "nielsen/error.hpp"
#include "nielsen/generator.hpp"
#include "nielsen/group.hpp"
#include "nielsen/instance.hpp"
#include "nielsen/semi_index.hpp"
#include "nielsen/verify.hpp"
