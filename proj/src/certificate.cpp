#include "tsi/certificate.hpp"

#include "tsi/errors.hpp"

namespace tsi {

NormCertificate NormCertificate::single_leaf(Idx index, int sign) {
    NormCertificate c;
    c.nodes.push_back({-1, index, sign, {}});
    c.root = 0;
    return c;
}

namespace {

int node_from_json(const nlohmann::json& j, NormCertificate& cert) {
    if (!j.is_object()) fail(Err::BadInput, "certificate nodes are objects");
    if (j.contains("leaf")) {
        const auto& l = j.at("leaf");
        if (!l.is_array() || l.size() != 2)
            fail(Err::BadInput, "leaf nodes look like [index, sign]");
        NormCertificate::Node n;
        n.index = l.at(0).get<Idx>();
        n.sign = l.at(1).get<int>();
        cert.nodes.push_back(n);
        return static_cast<int>(cert.nodes.size()) - 1;
    }
    if (!j.contains("char") || !j.contains("children"))
        fail(Err::BadInput, "inner nodes carry \"char\" and \"children\"");
    NormCertificate::Node n;
    n.character = j.at("char").get<int>();
    std::vector<int> kids;
    for (const auto& c : j.at("children")) kids.push_back(node_from_json(c, cert));
    n.children = std::move(kids);
    cert.nodes.push_back(std::move(n));
    return static_cast<int>(cert.nodes.size()) - 1;
}

nlohmann::json node_to_json(const NormCertificate& cert, int id) {
    const auto& n = cert.nodes[static_cast<std::size_t>(id)];
    if (n.leaf()) return nlohmann::json{{"leaf", {n.index, n.sign}}};
    nlohmann::json kids = nlohmann::json::array();
    for (int c : n.children) kids.push_back(node_to_json(cert, c));
    return nlohmann::json{{"char", n.character}, {"children", kids}};
}

} // namespace

NormCertificate NormCertificate::from_json(const nlohmann::json& j) {
    if (!j.contains("certificate")) fail(Err::BadInput, "expected a certificate object");
    NormCertificate cert;
    cert.root = node_from_json(j.at("certificate"), cert);
    return cert;
}

nlohmann::json NormCertificate::to_json() const {
    if (root < 0) fail(Err::BadInput, "empty certificate");
    return nlohmann::json{{"certificate", node_to_json(*this, root)}};
}

} // namespace tsi
