#! /usr/bin/env python3
"""
A simple module to provide access to the configuration options for
apollonite.

"""
import json
import os
from typing import Any, Dict, List, Optional

from .sandpile import Schedule


class MissingConfigOptionException(Exception):
    """
    An exception to be thrown when a required configuration option is missing.

    """


class ApolloniteConfig():
    """
    This class represents the configuration options for apollonite. Its
    purpose is to centralize the possible options and their corresponding
    default values, if any.

    """

    fields = [
        "log_level",
        "output_dir",
        "log_file",
        "cache_dir",
        "window_periods",
        "max_probe_size",
        "sandpile_schedule",
        "progress",
        "palette",
    ]

    def __init__(self, json_config: Optional[Dict[str, Any]] = None,
                 extra_required: Optional[List[str]] = None):
        """
        Initialize the Config class using the JSON configuration.

        """
        self.json_config = json_config if json_config is not None else {}

        self._required: List[str] = []

        if extra_required is not None:
            self._required.extend(extra_required)

        self._check_required()

    def __str__(self) -> str:
        """
        Implements the string conversion for the class.

        """
        string = ""
        for option in ApolloniteConfig.fields:
            if option == "sandpile_schedule":
                val = self.sandpile_schedule.name
            elif option == "palette":
                val = json.dumps(self.palette)
            else:
                val = getattr(self, option)
            string += f"\t{option} = {val}\n"
        return string

    @property
    def log_level(self) -> str:
        """
        The log level for the program output.

        """
        return self.json_config.get("log_level", "INFO").upper()

    @property
    def output_dir(self) -> str:
        """
        The directory to which to write the log file.

        """
        return self.json_config.get("output_dir", ".")

    @property
    def log_file(self) -> str:
        """
        The name of the log file within output_dir.

        """
        return self.json_config.get("log_file", "apollonite.log")

    @property
    def cache_dir(self) -> Optional[str]:
        """
        The directory of the on-disk lattice vector cache. Defaults to the
        APOLLONITE_CACHE environment variable.

        """
        return self.json_config.get("cache_dir",
                                    os.environ.get("APOLLONITE_CACHE"))

    @property
    def window_periods(self) -> int:
        """
        The number of lattice periods spanned by verification windows.

        """
        return int(self.json_config.get("window_periods", 3))

    @property
    def max_probe_size(self) -> int:
        """
        The largest vertex set enumerated by the maximality probe.

        """
        return int(self.json_config.get("max_probe_size", 6))

    @property
    def sandpile_schedule(self) -> Schedule:
        """
        The toppling order of the sandpile.

        Raises:
            ValueError

        """
        name = self.json_config.get("sandpile_schedule", "parallel")
        try:
            return Schedule[name]
        except KeyError:
            raise ValueError(f"Unknown sandpile schedule: {name}")

    @property
    def progress(self) -> bool:
        """
        Whether to show progress bars for long sweeps.

        """
        return bool(self.json_config.get("progress", True))

    @property
    def palette(self) -> Dict[str, int]:
        """
        The gray level of each Laplacian value, keyed by the value as a
        string.

        """
        return self.json_config.get(
            "palette", {"1": 0, "0": 85, "-1": 170, "-2": 255})

    def _check_required(self):
        """
        Checks that the required options have been set in the configuration
        file.

        """
        for attr in self._required:
            if attr not in self.json_config:
                raise MissingConfigOptionException(
                    f"Missing required config option: {attr}")
