from dataclasses import dataclass

from datadesc import datadesc


@datadesc(
    capacityMax={
        "Dimensions": {
            "location": {"ItemMinimumValue": 0, "UnitType": "spatial identifier"},
            "time": {"ItemMinimumValue": 0, "UnitType": "temporal identifier"},
        }
    }
)
@dataclass
class Component:
    """The Component class includes..."""

    capacityMax: "pd.DataFrame" = None


@datadesc(
    numberOfTimeSteps={"MinimumValue": 0, "ExclusiveMinimum": True, "Required": True},
)
@dataclass
class EnergySystemModel:
    numberOfTimeSteps: int = 8760

    @datadesc(clusterMethod={"ValueSet": ["averaging", "k_means"], "VariableRole": "input"})
    def aggregateTemporally(self, clusterMethod="averaging"):
        """Cluster the time series."""
        ...

    def removeComponent(self, componentName: str) -> Component:
        pass

    @datadesc(filePath={"FileFormat": "NetCDF"})
    def readNetCDFtoEnergySystemModel(self, filePath: str):
        """Read a model from a NetCDF file."""
        return None
