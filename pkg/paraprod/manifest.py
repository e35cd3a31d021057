"""Run manifests: everything needed to reproduce a CLI invocation."""

import json
from importlib.metadata import PackageNotFoundError, version
from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from paraprod.config import get_config


def package_version() -> str:
    try:
        return version('paraprod')
    except PackageNotFoundError:
        return 'unknown'


class RunManifest(BaseModel):
    command: str
    inputs: Dict = Field(default_factory=dict)
    seed: Optional[int] = None
    versions: Dict[str, str] = Field(default_factory=dict)
    outputs: List[str] = Field(default_factory=list)

    @classmethod
    def create(cls, command: str, inputs: Dict, seed: Optional[int] = None,
               outputs: Optional[List[str]] = None) -> 'RunManifest':
        versions = {'paraprod': package_version(), 'config': get_config().digest()}
        return cls(command=command, inputs=inputs, seed=seed, versions=versions, outputs=outputs or [])

    def to_json_str(self) -> str:
        return json.dumps(self.model_dump(), sort_keys=True, indent=2)

    def write(self, path: str):
        with open(path, 'w') as f:
            f.write(self.to_json_str())
            f.write('\n')

    @classmethod
    def read(cls, path: str) -> 'RunManifest':
        with open(path) as f:
            return cls.model_validate_json(f.read())
