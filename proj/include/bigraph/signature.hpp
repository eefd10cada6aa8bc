#pragma once

#include <map>
#include <stdexcept>
#include <string>

namespace bigraph {

struct Control {
    int arity = 0;
    bool active = true;   // activity defaults to active; passive only when requested

    friend auto operator<=>(const Control&, const Control&) = default;
};

class Signature {
public:
    Signature() = default;

    Signature& add(const std::string& name, int arity, bool active = true)
    {
        if (arity < 0) throw std::invalid_argument("control arity must be >= 0: " + name);
        if (controls_.count(name)) throw std::invalid_argument("duplicate control: " + name);
        controls_[name] = Control{arity, active};
        return *this;
    }

    bool has(const std::string& name) const { return controls_.count(name) != 0; }

    const Control& at(const std::string& name) const
    {
        auto it = controls_.find(name);
        if (it == controls_.end()) throw std::invalid_argument("unknown control: " + name);
        return it->second;
    }

    int arity(const std::string& name) const { return at(name).arity; }
    bool active(const std::string& name) const { return at(name).active; }

    const std::map<std::string, Control>& controls() const { return controls_; }

    friend bool operator==(const Signature&, const Signature&) = default;

private:
    std::map<std::string, Control> controls_;
};

} // namespace bigraph
