"""Primitives for interacting with the somlogic plugin subsystem"""
import importlib
import logging
import pkgutil
from importlib.metadata import entry_points
from somlogic.exceptions import ConfigurationError

# Every somlogic plugin must have a class registered with the following
# Python setup tools entrypoint
PLUGIN_ENTRYPOINT_NAME = "somlogic.plugins.v1.0"

# somlogic plugins are expected to be implemented as Python classes, with
# a static method named as shown below. This method is expected to return
# the name of the fuzzy logic the class implements the connectives of
PLUGIN_METHOD_NAME = "get_logic_name"

# package holding the plugins shipped with the library
BUILTIN_PLUGIN_PACKAGE = "somlogic.plugins"

DEFAULT_LOGIC = "zadeh"


def _builtin_plugins():
    package = importlib.import_module(BUILTIN_PLUGIN_PACKAGE)
    retval = list()
    for module_info in pkgutil.iter_modules(package.__path__):
        module = importlib.import_module(
            BUILTIN_PLUGIN_PACKAGE + "." + module_info.name)
        if hasattr(module, "PluginClass"):
            retval.append(module.PluginClass)
    return retval


def get_all_plugins():
    """Returns a list of all somlogic plugins installed on the system

    Plugins registered through the entry point come first, followed by the
    built-in plugins not registered that way (as in a source checkout).

    :returns: list of 0 or more installed plugins
    :rtype: :class:`list` of :class:`class`
    """
    log = logging.getLogger(__name__)
    # First load all libraries that are registered with the plugin API
    all_plugins = list()
    for entry_point in entry_points(group=PLUGIN_ENTRYPOINT_NAME):
        all_plugins.append(entry_point.load())
    for cur_plugin in _builtin_plugins():
        if cur_plugin not in all_plugins:
            all_plugins.append(cur_plugin)

    # Next, filter out those that don't support the current version of our API
    retval = list()
    for cur_plugin in all_plugins:
        if not hasattr(cur_plugin, PLUGIN_METHOD_NAME):
            log.debug(
                "Plugin %s does not expose the required %s static method.",
                cur_plugin.__module__,
                PLUGIN_METHOD_NAME)
            continue

        retval.append(cur_plugin)

    return retval


def find_plugin(logic_name):
    """Locates the class implementing a given fuzzy logic

    :param str logic_name: name of the logic, case insensitive
    :returns:
        reference to the plugin class implementing the logic, if one exists.
        If one doesn't exist, returns None.
    """
    formatted_name = logic_name.strip().lower()

    log = logging.getLogger(__name__)

    supported_plugins = list()
    for cur_plugin in get_all_plugins():
        if getattr(cur_plugin, PLUGIN_METHOD_NAME)() == formatted_name:
            supported_plugins.append(cur_plugin)

    if not supported_plugins:
        return None

    if len(supported_plugins) > 1:
        log.warning("multiple plugins detected for fuzzy logic %s. "
                    "Using first match.", formatted_name)

    return supported_plugins[0]


def get_logic_names():
    """Names of every available fuzzy logic, sorted

    :rtype: :class:`list` of :class:`str`
    """
    return sorted(set(getattr(cur, PLUGIN_METHOD_NAME)()
                      for cur in get_all_plugins()))


def get_connective_family(logic_name=DEFAULT_LOGIC):
    """Instantiates the connective family of a fuzzy logic

    :param str logic_name: name of the logic
    :rtype: :class:`~.connectives.ConnectiveFamily`
    """
    plugin_class = find_plugin(logic_name)
    if plugin_class is None:
        log = logging.getLogger(__name__)
        log.warning("Unsupported fuzzy logic %s", logic_name)
        raise ConfigurationError(
            "unknown fuzzy logic {0!r}, expected one of: {1}".format(
                logic_name, ", ".join(get_logic_names())))
    logging.getLogger(__name__).debug(
        "loaded %s connectives from %s", plugin_class.get_logic_name(),
        plugin_class.__module__)
    return plugin_class()


if __name__ == "__main__":  # pragma: no cover
    pass
