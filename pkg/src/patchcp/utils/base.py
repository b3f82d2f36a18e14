r"""
Contains abstract base classes shared by all algorithms of the package.
\date 2026
"""

from abc import ABC
import warnings

class Base(ABC):
	r"""
	Abstract base class, which deals with superfluous constructor arguments.
	"""
	def __init__(self, *args, **kwargs):
		r"""
		Construct the object and warn about unused/unknown arguments.
		\param *args Additional positional arguments, will be discarded and warned about.
		\param **kwargs Additional keyword arguments, will be discarded and warned about.
		"""
		if len(args) > 0:
			warnings.warn("Unused positional arguments for {c}: {a}".format(c=type(self).__name__, a=args))
		if len(kwargs) > 0:
			warnings.warn("Unknown keyword arguments for {c}: {k}".format(c=type(self).__name__, k=kwargs))
	def __repr__(self) -> str:
		public = {k: v for k, v in vars(self).items() if not k.startswith("_")}
		return "{c}({p})".format(c=type(self).__name__, p=", ".join("{}={!r}".format(k, v) for k, v in public.items()))

class Task(Base):
	r"""
	A task object implements one algorithm for a specific problem, e.g. a
	simulator of the patch chain or a scanner for a drift inequality.
	Tasks for the same problem share the same interface and are interchangeable.
	Arguments passed to the working method override the attributes set at construction.
	"""
	def __init__(self, *args, **kwargs):
		super().__init__(*args, **kwargs)

class Workflow(Base):
	r"""
	A workflow object orders several Task objects to answer a larger question,
	e.g. running many seeded replicas and aggregating them into an estimate.
	(A Workflow object can serve as a Task object itself in a larger Workflow.)
	"""
	def __init__(self, *args, **kwargs):
		super().__init__(*args, **kwargs)
