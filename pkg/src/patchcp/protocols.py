r"""
Contains the interface to files: result tables, run manifests and configuration files.

Result tables are CSV files with a header row, written with 17 significant digits,
so that floating point values survive a round trip.
Each table is accompanied by a manifest `<table>.manifest.yaml`, which records the
command, the merged parameters, the root seed, the package version, the wall clock
times and the output paths. A manifest is a valid configuration file.
\date 2026
"""

import dataclasses
import datetime
import logging
import os

import pandas as pd
import yaml

from .utils import misc

logger = logging.getLogger(__name__)

## Format of floating point numbers in result tables.
FLOAT_FORMAT = "%.17g"

def write_table(rows: list, path: str, columns: list = None) -> pd.DataFrame:
	r"""
	Write the records `rows` as CSV table to `path`.
	\param rows List of dictionaries, one per record, in output order.
	\param path Target file path.
	\param columns Column order, defaults to the keys of the first record.
	\return The written `pandas.DataFrame`.
	"""
	frame = pd.DataFrame.from_records(rows, columns=columns)
	frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
	logger.info("Wrote %d records to %s.", len(frame), path)
	return frame

def read_table(path: str) -> pd.DataFrame:
	return pd.read_csv(path)

def manifest_path(path: str) -> str:
	r"""
	Path of the manifest, which belongs to the output file `path`.
	"""
	return "{}.manifest.yaml".format(path)

@dataclasses.dataclass
class RunManifest:
	r"""
	Record of one command line run.
	"""
	## Name of the subcommand.
	command: str
	## Merged parameters (configuration file and command line flags).
	parameters: dict
	## Root seed, `None` for deterministic commands.
	seed: int = None
	## Version of the package.
	version: str = None
	## ISO 8601 start time.
	started: str = None
	## ISO 8601 end time.
	finished: str = None
	## Paths of the written files.
	outputs: list = dataclasses.field(default_factory=list)
	@staticmethod
	def now() -> str:
		return datetime.datetime.now().isoformat(timespec="seconds")
	def as_dict(self) -> dict:
		return misc.np_to_python(dataclasses.asdict(self))
	def write(self, path: str):
		r"""
		Write the manifest as YAML to `path`.
		"""
		with open(path, "w") as f:
			yaml.safe_dump(self.as_dict(), f, sort_keys=False)
		logger.info("Wrote manifest %s.", path)
	@classmethod
	def read(cls, path: str) -> "RunManifest":
		with open(path, "r") as f:
			content = yaml.safe_load(f)
		fields = {f.name for f in dataclasses.fields(cls)}
		return cls(**{k: v for k, v in content.items() if k in fields})

def load_config(path: str) -> dict:
	r"""
	Read a configuration file.
	Plain YAML mappings are taken as parameters;
	for a manifest, its `parameters` together with its `seed` are returned.
	\return Dictionary of parameter names (with underscores) to values.
	"""
	if not os.path.isfile(path):
		raise ValueError("Configuration file '{}' does not exist.".format(path))
	with open(path, "r") as f:
		content = yaml.safe_load(f) or {}
	if not isinstance(content, dict):
		raise ValueError("Configuration file '{}' does not contain a mapping.".format(path))
	if "parameters" in content and "command" in content:
		config = dict(content["parameters"])
		if content.get("seed") is not None:
			config["seed"] = content["seed"]
		return config
	return {str(k).replace("-", "_"): v for k, v in content.items()}
