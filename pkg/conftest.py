#!/usr/bin/env python3
##############################################################################
##                                                                          ##
##          CQ_POLAR - Polar Coding for Classical-Quantum Networks          ##
##                                                                          ##
##              Copyright (C) 2026, The CQ_POLAR Developers                 ##
##                                                                          ##
##  This file is part of CQ_POLAR.                                          ##
##                                                                          ##
##  CQ_POLAR is free software: you can redistribute it and/or modify it     ##
##  under the terms of the GNU General Public License as published by the   ##
##  Free Software Foundation, either version 3 of the License, or (at your  ##
##  option) any later version.                                              ##
##                                                                          ##
##  CQ_POLAR is distributed in the hope that it will be useful,             ##
##  but WITHOUT ANY WARRANTY; without even the implied warranty of          ##
##  MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the           ##
##  GNU General Public License for more details.                            ##
##                                                                          ##
##  You should have received a copy of the GNU General Public License       ##
##  along with CQ_POLAR. If not, see <http://www.gnu.org/licenses/>.        ##
##                                                                          ##
##############################################################################


# Shared pytest configuration. Living at the top of the tree also puts
# the cq_polar package on the import path of every test.

import os

from hypothesis import settings, HealthCheck

settings.register_profile("default",
                          deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough",
                          parent=settings.get_profile("default"),
                          max_examples=1000)
settings.load_profile(os.getenv("CQ_POLAR_HYPOTHESIS_PROFILE", "default"))
