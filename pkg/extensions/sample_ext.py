"""Sample extension artifact: a custom VM placement policy and a monitoring datacenter.

Drop this file into the extensions directory and reference the names below
from a script's ``className`` fields::

    vmAllocationPolicy:
      className: sample.ext.RoundRobinAllocationPolicy
    variant:
      className: sample.ext.MonitoringDatacenter
"""

from cloudscript.api import Datacenter, VmAllocationPolicy

ROUND_ROBIN = "sample.ext.RoundRobinAllocationPolicy"
MONITORING_DATACENTER = "sample.ext.MonitoringDatacenter"


class RoundRobinAllocationPolicy(VmAllocationPolicy):
    """Cycle through hosts, placing each VM on the next host that fits.

    The cursor only moves on a successful placement.
    """

    def __init__(self, properties=None):
        super().__init__(properties)
        self.cursor = 0

    def allocate(self, vm, hosts):
        n = len(hosts)
        for step in range(n):
            idx = (self.cursor + step) % n
            if hosts[idx].is_suitable_for(vm):
                self.cursor = (idx + 1) % n
                return hosts[idx].id
        return None


class MonitoringDatacenter(Datacenter):
    """Datacenter that samples every placed VM on each processing update.

    With a positive scheduling interval the samples form a periodic series.
    """

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.monitor_log = []

    def update_cloudlet_processing(self, now):
        super().update_cloudlet_processing(now)
        for vm_id in sorted(self.vms):
            self.monitor_log.append((now, vm_id, len(self.running_cloudlets(vm_id))))

    def monitoring_samples(self):
        return list(self.monitor_log)


def register(catalog):
    catalog.register(ROUND_ROBIN, RoundRobinAllocationPolicy)
    catalog.register(MONITORING_DATACENTER, MonitoringDatacenter)
