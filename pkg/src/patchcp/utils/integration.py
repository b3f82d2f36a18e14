r"""
Contains functionality for integrating autonomous scalar ordinary differential equations
\f$u'(t) = f(u)\f$ on a fixed time grid.
\date 2026
"""

import logging

import numpy as np
import scipy.integrate

from . import base

logger = logging.getLogger(__name__)

class Integrator(base.Task):
	r"""
	Object to integrate \f$u'(t) = f(u)\f$ from an initial value over a time horizon.
	The solution is reported on the grid \f$t_k = k h\f$ of the step width \f$h\f$.
	"""
	def __init__(self,
				method: str = "rk4",
				step: float = 1e-3,
			*args, **kwargs):
		r"""
		Constructs an Integrator object.
		\param method \copybrief method For more, see \ref method.
		\param step \copybrief step For more, see \ref step.
		\param *args Additional positional arguments, will be passed to the superconstructor.
		\param **kwargs Additional keyword arguments, will be passed to the superconstructor.
		"""
		super().__init__(*args, **kwargs)
		## Algorithm, which should be used to advance the solution. Available options:
		##	- `"rk4"`: (default) Classical fourth order Runge-Kutta scheme with the fixed step width \ref step.
		##	- `"solve_ivp"`: Adaptive integration by [scipy.integrate.solve_ivp](https://docs.scipy.org/doc/scipy/reference/generated/scipy.integrate.solve_ivp.html),
		##		evaluated on the same grid.
		self.method = method
		## Step width \f$h > 0\f$ of the time grid.
		self.step = step
	def solve(self,
			f,
			u0: float,
			horizon: float,
			step: float = None,
			method: str = None,
			bounds: tuple = None,
			) -> tuple:
		r"""
		Integrate \f$u'(t) = f(u)\f$ with \f$u(0) = u_0\f$ up to \f$t = \f$ `horizon`.
		\param f Right hand side, a callable of one float.
		\param u0 Initial value.
		\param horizon End of the integration interval.
		\param step \copybrief step Defaults to \ref step.
		\param method \copybrief method Defaults to \ref method.
		\param bounds Optional tuple `(lower, upper)`.
			The integration is stopped at the first grid point outside these bounds.
		\return Tuple `(times, values, left_bounds)`, where `left_bounds` is `True`,
			if the integration was stopped because the solution left `bounds`.
		"""
		step = step if step is not None else self.step
		method = method if method is not None else self.method
		if step <= 0 or horizon <= 0:
			raise ValueError("Step ({}) and horizon ({}) must be positive.".format(step, horizon))
		count = int(round(horizon/step))
		if method == "rk4":
			return self._rk4(f, u0, step, count, bounds)
		elif method == "solve_ivp":
			times = np.linspace(0.0, count*step, count + 1)
			solution = scipy.integrate.solve_ivp(lambda t, u: f(u[0]), (0.0, times[-1]), [u0], t_eval=times, rtol=1e-10, atol=1e-12)
			values = solution.y[0]
			left = False
			if bounds is not None:
				outside = np.flatnonzero((values < bounds[0]) | (values > bounds[1]))
				if outside.size > 0:
					left = True
					times, values = times[:outside[0]+1], values[:outside[0]+1]
			return times, values, left
		else:
			raise ValueError("No such option '{}' known for `method`.".format(method))
	def _rk4(self, f, u0: float, h: float, count: int, bounds: tuple) -> tuple:
		values = [u0]
		u = u0
		left = False
		for _ in range(count):
			k1 = f(u)
			k2 = f(u + 0.5*h*k1)
			k3 = f(u + 0.5*h*k2)
			k4 = f(u + h*k3)
			u = u + h*(k1 + 2.0*k2 + 2.0*k3 + k4)/6.0
			values.append(u)
			if bounds is not None and not (bounds[0] <= u <= bounds[1]):
				left = True
				break
		values = np.array(values)
		times = h*np.arange(values.size)
		logger.debug("RK4 integration finished after %d steps.", values.size - 1)
		return times, values, left
