"""
File: run_config_dto.py
Description: DTO for the parameters of a cli run, saved with every output for provenance

@author Derek Garcia
"""

from argparse import Namespace
from dataclasses import dataclass, field
from typing import Dict, Any

# cli-only keys that do not change results
_IGNORED_ARGS = {'command', 'seed', 'threads', 'out', 'config', 'log_level', 'silent'}


@dataclass(frozen=True)
class RunConfigDTO:
    """
    Validated parameters of a single run
    """
    command: str
    seed: int
    threads: int = 1
    out: str = "."
    parameters: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        """
        Validate run config

        :raises ValueError: If config is invalid
        """
        if self.seed < 0:
            raise ValueError(f"Seed must be non-negative, got {self.seed}")

        if self.threads < 1:
            raise ValueError(f"Need at least one thread, got {self.threads}")

    @classmethod
    def from_args(cls, args: Namespace, settings: Dict[str, Any] = None) -> 'RunConfigDTO':
        """
        Build from parsed cli args

        :param args: Parsed cli args
        :param settings: Resolved config file settings that affect results (Default: None)
        :return: Run config
        """
        params = {k: v for k, v in sorted(vars(args).items()) if k not in _IGNORED_ARGS}
        if settings:
            params['settings'] = settings
        return cls(args.command, args.seed, args.threads, args.out, params)

    def to_dict(self) -> Dict[str, Any]:
        """
        :return: Dict ready for json
        """
        return {
            'command': self.command,
            'seed': self.seed,
            'threads': self.threads,
            'parameters': self.parameters
        }
