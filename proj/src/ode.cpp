#include "tfd/ode.hpp"
