import json


class TestResult:
    __test__ = False

    def __init__(self, statistic, critical_value, p_value, config=None):
        self.statistic = float(statistic)
        self.critical_value = float(critical_value)
        self.p_value = float(p_value)
        self.config = config or {}

    @property
    def reject(self) -> bool:
        return self.statistic > self.critical_value

    def significant_at(self, alpha: float) -> bool:
        return self.p_value <= alpha

    def to_dict(self) -> dict:
        return {
            'statistic': self.statistic,
            'critical_value': self.critical_value,
            'p_value': self.p_value,
            'reject': self.reject,
            'config': self.config,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)
