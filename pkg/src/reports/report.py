"""
JSON 보고서 스키마와 안정 직렬화

같은 입력은 timing_ms 를 제외하고 바이트 단위로 같은 JSON 을 만듭니다.
"""
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Optional

import numpy as np

SCHEMA_VERSION = "1"


def normalize(value: Any) -> Any:
    """
    JSON 직렬화 가능한 값으로 변환

    Fraction 은 {"num", "den", "float"}, 집합은 정렬된 리스트,
    복소수는 {"re", "im"}, to_dict() 를 가진 객체는 그 결과로 바꿉니다.
    """
    if isinstance(value, Fraction):
        return {"num": value.numerator, "den": value.denominator, "float": float(value)}
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, (complex, np.complexfloating)):
        return {"re": float(value.real), "im": float(value.imag)}
    if isinstance(value, dict):
        return {str(k): normalize(v) for k, v in value.items()}
    if isinstance(value, (set, frozenset)):
        return [normalize(v) for v in sorted(value)]
    if isinstance(value, (list, tuple)):
        return [normalize(v) for v in value]
    if isinstance(value, np.ndarray):
        return [normalize(v) for v in value.tolist()]
    if hasattr(value, "to_dict"):
        return normalize(value.to_dict())
    return value


def fraction_from_json(value: Dict[str, Any]) -> Fraction:
    return Fraction(value["num"], value["den"])


@dataclass
class Report:
    """명령 실행 보고서"""
    command: str
    inputs: Dict[str, Any] = field(default_factory=dict)
    results: Dict[str, Any] = field(default_factory=dict)
    timing_ms: Optional[float] = None
    schema_version: str = SCHEMA_VERSION

    def to_payload(self, include_timing: bool = True) -> Dict[str, Any]:
        payload = {
            "schema_version": self.schema_version,
            "command": self.command,
            "inputs": normalize(self.inputs),
            "results": normalize(self.results),
        }
        if include_timing:
            payload["timing_ms"] = self.timing_ms
        return payload

    def to_json(self, include_timing: bool = True) -> str:
        """키 정렬, 들여쓰기 2 의 안정 직렬화"""
        return json.dumps(self.to_payload(include_timing), sort_keys=True, indent=2,
                          ensure_ascii=False)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        """
        Raises:
            ValueError: 스키마 버전이 다르거나 필수 키가 없는 경우
        """
        data = json.loads(text)
        if data.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"지원하지 않는 스키마 버전입니다: {data.get('schema_version')}")
        if "command" not in data:
            raise ValueError("command 키가 없습니다")
        return cls(
            command=data["command"],
            inputs=data.get("inputs", {}),
            results=data.get("results", {}),
            timing_ms=data.get("timing_ms"),
            schema_version=data["schema_version"],
        )
